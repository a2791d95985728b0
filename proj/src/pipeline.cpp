#include "rainsense/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rainsense/errors.hpp"
#include "rainsense/grid_io.hpp"
#include "rainsense/spatialization.hpp"

namespace rainsense {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

Simulation simulate(const Scenario& s) {
    validate(s);
    const Projection proj = s.projection();
    const auto field = s.field.make();

    RainGrid truth = rasterize(*field, s.grid);
    std::vector<Observation> obs = observe_all(s.sensors, *field, proj, s.step_km, s.noise);
    RainGrid estimate = idw_interpolate(obs, s.grid, s.idw);
    const auto masks = s.masks();
    std::vector<MaskMetrics> metrics = error_summary(estimate, truth, masks);
    return {std::move(truth), std::move(obs), std::move(estimate), std::move(metrics)};
}

const MaskMetrics& RunReport::metric(const std::string& mask_name) const {
    for (const auto& m : metrics)
        if (m.mask_name == mask_name) return m;
    throw InvalidArgument("no metrics for mask '" + mask_name + "'");
}

void write_metrics(std::ostream& out, const std::string& scenario_id, const std::vector<MaskMetrics>& metrics) {
    out << "scenario = " << scenario_id << '\n';
    for (const auto& m : metrics) {
        out << m.mask_name << ".boxes = " << m.boxes << '\n';
        out << m.mask_name << ".rmse = " << format_shortest(m.rmse) << '\n';
        out << m.mask_name << ".bias = " << format_shortest(m.bias) << '\n';
        out << m.mask_name << ".mae = " << format_shortest(m.mae) << '\n';
    }
}

std::map<std::string, std::string> read_metrics(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) throw ParseError(line_no, "", "expected 'key = value'");
        out[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return out;
}

void write_observations_csv(std::ostream& out, const std::vector<Observation>& obs, const Projection& proj) {
    out << "source_id,x_km,y_km,lon_deg,lat_deg,rain_rate_mm_h\n";
    for (const auto& o : obs) {
        const GeoPoint g = proj.from_local(o.position);
        out << csv_field(o.source_id) << ',' << format_shortest(o.position.x_km) << ',' << format_shortest(o.position.y_km)
            << ',' << format_shortest(g.lon_deg) << ',' << format_shortest(g.lat_deg) << ',' << format_shortest(o.rain_rate_mm_h)
            << '\n';
    }
}

RunReport run(const Scenario& s, const std::filesystem::path& out_dir) {
    Simulation sim = simulate(s);
    const Projection proj = s.projection();
    const GeoPoint corner = proj.from_local(s.grid.origin);
    // One brightness scale for both maps so they are directly comparable.
    const double scale = std::max(sim.truth.max_value(), sim.estimate.max_value());

    RunReport report;
    report.scenario_id = s.id;
    report.artifacts = {out_dir / "truth.csv",   out_dir / "estimate.csv", out_dir / "observations.csv",
                        out_dir / "metrics.txt", out_dir / "truth.pgm",    out_dir / "estimate.pgm"};

    std::ostringstream obs_text;
    write_observations_csv(obs_text, sim.observations, proj);
    std::ostringstream metrics_text;
    write_metrics(metrics_text, s.id, sim.metrics);

    prepare_dir(out_dir);
    write_grid_csv(report.artifacts.truth_csv, sim.truth, corner);
    write_grid_csv(report.artifacts.estimate_csv, sim.estimate, corner);
    write_text(report.artifacts.observations_csv, obs_text.str());
    write_text(report.artifacts.metrics_txt, metrics_text.str());
    write_pgm(report.artifacts.truth_pgm, sim.truth, scale);
    write_pgm(report.artifacts.estimate_pgm, sim.estimate, scale);

    report.observations = std::move(sim.observations);
    report.metrics = std::move(sim.metrics);
    return report;
}

RunArtifacts emit_field(const Scenario& s, const std::filesystem::path& out_dir) {
    validate(s);
    const auto field = s.field.make();
    const RainGrid truth = rasterize(*field, s.grid);
    const GeoPoint corner = s.projection().from_local(s.grid.origin);

    RunArtifacts a;
    a.truth_csv = out_dir / "truth.csv";
    a.truth_pgm = out_dir / "truth.pgm";
    prepare_dir(out_dir);
    write_grid_csv(a.truth_csv, truth, corner);
    write_pgm(a.truth_pgm, truth);
    return a;
}

}  // namespace rainsense
