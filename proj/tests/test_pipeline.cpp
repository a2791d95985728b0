#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rainsense/errors.hpp"
#include "rainsense/grid_io.hpp"
#include "rainsense/pipeline.hpp"

using namespace rainsense;
using Catch::Approx;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("satellite links improve the central estimate", "[pipeline]") {
    const Simulation a = simulate(load_scenario("paper-A"));
    const Simulation b = simulate(load_scenario("paper-B"));
    REQUIRE(a.metrics.size() == 2);
    REQUIRE(b.metrics.size() == 2);
    CHECK(a.observations.size() == 5);
    CHECK(b.observations.size() == 7);
    CHECK(b.metrics[1].rmse < a.metrics[1].rmse);
    CHECK(a.metrics[0].boxes == 14400);
    CHECK(a.metrics[1].boxes == b.metrics[1].boxes);
}

TEST_CASE("observations at every box center reproduce the truth", "[pipeline]") {
    std::ostringstream text;
    text << "id = dense\ngrid.nx = 12\ngrid.ny = 12\ngrid.box_km = 1\n";
    const Scenario base = load_scenario("paper-A");
    const Projection proj = base.projection();
    const GridSpec spec{12, 12, 1.0, {}};
    for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t c = 0; c < 12; ++c) {
            const GeoPoint g = proj.from_local(spec.box_center(r, c));
            text << "[gauge]\nid = g" << r << '_' << c << "\nlon = " << format_shortest(g.lon_deg)
                 << "\nlat = " << format_shortest(g.lat_deg) << '\n';
        }
    }
    std::istringstream in(text.str());
    const Simulation sim = simulate(parse_scenario(in));
    // The round trip through degrees leaves each gauge within ~1e-12 km of its center.
    for (const auto& m : sim.metrics) CHECK(m.rmse < 1e-9);
}

TEST_CASE("run writes artifacts that reproduce the reported metrics", "[pipeline]") {
    const Scenario s = load_scenario("paper-B");
    const auto dir = scratch_dir("rainsense_pipeline_run");
    const RunReport rep = run(s, dir);
    CHECK(rep.scenario_id == "paper-B");
    for (const auto& p : {rep.artifacts.truth_csv, rep.artifacts.estimate_csv, rep.artifacts.observations_csv,
                          rep.artifacts.metrics_txt, rep.artifacts.truth_pgm, rep.artifacts.estimate_pgm})
        REQUIRE(std::filesystem::exists(p));

    const GridFile truth = read_grid_csv(rep.artifacts.truth_csv);
    const GridFile est = read_grid_csv(rep.artifacts.estimate_csv);
    CHECK(truth.grid.spec() == s.grid);
    const auto masks = s.masks();
    const auto recomputed = error_summary(est.grid, truth.grid, masks);
    const auto file_metrics = read_metrics(rep.artifacts.metrics_txt);
    CHECK(file_metrics.at("scenario") == "paper-B");
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        const MaskMetrics& m = rep.metrics[i];
        CHECK(recomputed[i].rmse == Approx(m.rmse).epsilon(1e-5));
        CHECK(std::stod(file_metrics.at(m.mask_name + ".rmse")) == m.rmse);
        CHECK(std::stoul(file_metrics.at(m.mask_name + ".boxes")) == m.boxes);
    }
    CHECK(rep.metric("central").boxes == rep.metrics[1].boxes);
    CHECK_THROWS_AS(rep.metric("nowhere"), InvalidArgument);

    const std::string obs = slurp(rep.artifacts.observations_csv);
    CHECK(obs.rfind("source_id,x_km,y_km,lon_deg,lat_deg,rain_rate_mm_h\n", 0) == 0);
    CHECK(obs.find("\"Bocca D'Arno\"") == std::string::npos);
    CHECK(obs.find("Podere Rottaia / Eutelsat 10A,") != std::string::npos);

    const Graymap tg = read_pgm(rep.artifacts.truth_pgm);
    CHECK(tg.width == 120);
    CHECK(tg.height == 120);
    std::filesystem::remove_all(dir);
}

TEST_CASE("runs are deterministic and byte-identical", "[pipeline]") {
    Scenario s = load_scenario("paper-B", {{"noise.sigma_mm_h", "0.3"}, {"noise.seed", "5"}});
    const auto d1 = scratch_dir("rainsense_pipeline_det1");
    const auto d2 = scratch_dir("rainsense_pipeline_det2");
    const RunReport r1 = run(s, d1);
    const RunReport r2 = run(s, d2);
    for (const char* f : {"truth.csv", "estimate.csv", "observations.csv", "metrics.txt", "truth.pgm", "estimate.pgm"})
        CHECK(slurp(d1 / f) == slurp(d2 / f));
    CHECK(r1.metrics[1].rmse == r2.metrics[1].rmse);
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST_CASE("emit_field writes the truth only", "[pipeline]") {
    const auto dir = scratch_dir("rainsense_pipeline_field");
    const RunArtifacts a = emit_field(load_scenario("paper-A"), dir);
    CHECK(std::filesystem::exists(a.truth_csv));
    CHECK(std::filesystem::exists(a.truth_pgm));
    CHECK_FALSE(std::filesystem::exists(dir / "estimate.csv"));
    const GridFile g = read_grid_csv(a.truth_csv);
    CHECK(g.grid.at(59, 59) == Approx(9.999).margin(1e-4));
    std::filesystem::remove_all(dir);
}

TEST_CASE("failed simulations leave no partial output", "[pipeline]") {
    const auto dir = scratch_dir("rainsense_pipeline_fail");
    std::istringstream in("id = broken\n[lnb]\nid = low\nlon = 10.3\nlat = 43.65\nsat_lon = -150\n");
    const Scenario s = parse_scenario(in);
    CHECK_THROWS_AS(run(s, dir), SensorError);
    CHECK_FALSE(std::filesystem::exists(dir));
}
