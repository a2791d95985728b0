#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rainsense/errors.hpp"
#include "rainsense/scenario.hpp"

using namespace rainsense;
using Catch::Approx;

namespace {

Scenario parse(const std::string& text, const Overrides& o = {}) {
    std::istringstream in(text);
    return parse_scenario(in, o);
}

const char* kMinimal = "id = tiny\n[gauge]\nid = g\nlon = 10.3\nlat = 43.65\n";

std::filesystem::path scratch_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("built-in scenario A: gauges only", "[scenario]") {
    const Scenario s = load_scenario("paper-A");
    CHECK(s.id == "paper-A");
    REQUIRE(s.sensors.gauges.size() == 5);
    CHECK(s.sensors.lnbs.empty());
    const struct {
        const char* id;
        double lon, lat;
    } expected[] = {{"Bocca D'Arno", 10.2803, 43.6807},
                    {"Podere Rottaia", 10.3104, 43.6687},
                    {"Centro Avanzi", 10.3104, 43.6687},
                    {"Coltano", 10.3909, 43.6379},
                    {"Stagno", 10.3104, 43.5999}};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(s.sensors.gauges[i].id == expected[i].id);
        CHECK(s.sensors.gauges[i].position.lon_deg == expected[i].lon);
        CHECK(s.sensors.gauges[i].position.lat_deg == expected[i].lat);
    }
}

TEST_CASE("built-in scenario B: three gauges and four satellite links", "[scenario]") {
    const Scenario s = load_scenario("paper-B");
    REQUIRE(s.sensors.gauges.size() == 3);
    REQUIRE(s.sensors.lnbs.size() == 4);
    CHECK(s.sensors.gauges[0].id == "Bocca D'Arno");
    CHECK(s.sensors.gauges[2].id == "Stagno");
    const double sats[] = {10.0, 52.0, 4.8, 28.2};
    for (std::size_t i = 0; i < 4; ++i) {
        const MsrsLnb& l = s.sensors.lnbs[i];
        CHECK(l.sat_lon_deg == sats[i]);
        CHECK(l.rain_height_km == 2.7);
        CHECK(l.mode == SensorMode::Ideal);
        CHECK(l.coeffs.alpha == Approx(0.0238578).epsilon(1e-6));
        CHECK(l.coeffs.beta == Approx(1.18247).epsilon(1e-6));
    }
    CHECK(s.sensors.lnbs[0].station.lon_deg == 10.3112);
    CHECK(s.sensors.lnbs[0].station.lat_deg == 43.6751);
    CHECK(s.sensors.lnbs[3].station.lon_deg == 10.3464);
    CHECK(s.sensors.lnbs[3].station.lat_deg == 43.6800);
}

TEST_CASE("built-in scenarios share the test-area setup", "[scenario]") {
    for (const auto& name : builtin_scenario_names()) {
        const Scenario s = load_scenario(name);
        CHECK(s.origin.lon_deg == 10.2691);
        CHECK(s.origin.lat_deg == 43.7040);
        CHECK(s.earth_radius_km == 6371.0);
        CHECK(s.grid == GridSpec{120, 120, 0.1, {0.0, 0.0}});
        CHECK(s.field.kind == FieldKind::Gaussian);
        CHECK(s.field.peak_mm_h == 10.0);
        CHECK(s.field.center.x_km == 6.0);
        CHECK(s.field.center.y_km == -6.0);
        CHECK(s.field.sigma_km == 5.0);
        CHECK(s.idw.power == 4.0);
        CHECK(s.step_km == 0.01);
        CHECK(s.central_radius_km == 4.0);
        const auto masks = s.masks();
        REQUIRE(masks.size() == 2);
        CHECK(masks[0].name == "extended");
        CHECK(masks[1].name == "central");
        CHECK_FALSE(s.noise.enabled());
    }
    CHECK_FALSE(builtin_scenario_text("paper-C").has_value());
}

TEST_CASE("defaults fill a minimal config", "[scenario]") {
    const Scenario s = parse(kMinimal);
    CHECK(s.id == "tiny");
    CHECK(s.grid == GridSpec{});
    CHECK(s.sensors.gauges.size() == 1);
    CHECK(s.sensors.gauges[0].altitude_km == 0.0);
}

TEST_CASE("overrides replace and add top-level keys", "[scenario]") {
    const Scenario s = load_scenario("paper-B", {{"central.radius_km", "4.9"},
                                                 {"sensor.mode", "physical"},
                                                 {"noise.sigma_mm_h", "0.2"},
                                                 {"noise.seed", "17"}});
    CHECK(s.central_radius_km == 4.9);
    CHECK(s.noise.sigma_mm_h == 0.2);
    CHECK(s.noise.seed == 17);
    for (const auto& l : s.sensors.lnbs) CHECK(l.mode == SensorMode::Physical);

    CHECK_THROWS_AS(load_scenario("paper-A", {{"bogus.key", "1"}}), ParseError);
}

TEST_CASE("LNB block coefficients", "[scenario]") {
    const std::string head = "[lnb]\nid = l\nlon = 10.3\nlat = 43.65\nsat_lon = 10\n";
    CHECK(parse(head + "alpha = 0.03\nbeta = 1.1\n").sensors.lnbs[0].coeffs.alpha == 0.03);
    const Scenario v = parse(head + "freq_ghz = 11\npol = V\n");
    CHECK(v.sensors.lnbs[0].coeffs.alpha == Approx(0.0173073).epsilon(1e-6));
    CHECK(v.sensors.lnbs[0].coeffs.beta == Approx(1.16171).epsilon(1e-6));
    CHECK_THROWS_AS(parse(head + "alpha = 0.03\n"), ParseError);
    CHECK_THROWS_AS(parse(head + "freq_ghz = 11.5\n"), ParseError);
    const Scenario x = parse("sensor.xi = 0.25\nsensor.freq_ghz = 14\n" + head + "xi = 0.5\n");
    CHECK(x.sensors.lnbs[0].xi == 0.5);
    CHECK(x.sensors.lnbs[0].coeffs.beta == Approx(1.13956).epsilon(1e-6));
}

TEST_CASE("parse errors carry line and key", "[scenario]") {
    auto expect_error = [](const std::string& text, std::size_t line, const std::string& key) {
        try {
            parse(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
            CHECK(e.key() == key);
        }
    };
    expect_error(std::string("grid.nz = 4\n") + kMinimal, 1, "grid.nz");
    expect_error(std::string("id = a\nid = b\n") + "[gauge]\nid = g\nlon = 1\nlat = 1\n", 2, "id");
    expect_error(std::string(kMinimal) + "colour = red\n", 6, "colour");
    expect_error(std::string("grid.box_km = wide\n") + kMinimal, 1, "grid.box_km");
    expect_error(std::string("grid.nx = -3\n") + kMinimal, 1, "grid.nx");
    expect_error(std::string("field.kind = square\n") + kMinimal, 1, "field.kind");
    expect_error("[gauge]\nid = g\nlat = 1\n", 1, "lon");
    CHECK_THROWS_AS(parse("[sensor]\n"), ParseError);
    CHECK_THROWS_AS(parse("just words\n"), ParseError);
}

TEST_CASE("validation rejects violated invariants", "[scenario]") {
    auto bad = [](const std::string& line) { return parse(line + "\n" + kMinimal); };
    CHECK_THROWS_AS(bad("field.sigma_km = 0"), ValidationError);
    CHECK_THROWS_AS(bad("field.sigma_km = -1"), ValidationError);
    CHECK_THROWS_AS(bad("grid.box_km = 0"), ValidationError);
    CHECK_THROWS_AS(bad("grid.nx = 0"), ValidationError);
    CHECK_THROWS_AS(bad("idw.power = 0"), ValidationError);
    CHECK_THROWS_AS(bad("central.radius_km = 0"), ValidationError);
    CHECK_THROWS_AS(bad("quadrature.step_km = 0"), ValidationError);
    CHECK_THROWS_AS(bad("origin.lat = 95"), ValidationError);
    CHECK_THROWS_AS(parse("id = empty\n"), ValidationError);
    CHECK_THROWS_AS(parse("[lnb]\nid = l\nlon = 10.3\nlat = 43.65\nsat_lon = 10\nalt_km = 3\n"), ValidationError);
    CHECK_THROWS_AS(parse("[lnb]\nid = l\nlon = 10.3\nlat = 43.65\nsat_lon = 10\nxi = 1\n"), ValidationError);
    try {
        bad("field.sigma_km = 0");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("field.sigma_km") != std::string::npos);
    }
}

TEST_CASE("file scenarios and coefficient tables", "[scenario]") {
    const auto dir = scratch_dir("rainsense_scenario_test");
    {
        std::ofstream t(dir / "coeffs.txt");
        t << "# f pol alpha beta\n11.7 H 0.02197 1.191\n";
        std::ofstream c(dir / "custom.conf");
        c << "id = custom-file\ncoeff_table = coeffs.txt\nsensor.freq_ghz = 11.7\n"
          << "[lnb]\nid = l\nlon = 10.3\nlat = 43.65\nsat_lon = 10\n";
    }
    const Scenario s = load_scenario((dir / "custom.conf").string());
    CHECK(s.id == "custom-file");
    CHECK(s.sensors.lnbs[0].coeffs.alpha == 0.02197);
    CHECK(s.sensors.lnbs[0].coeffs.beta == 1.191);

    CHECK_THROWS_AS(load_scenario((dir / "missing.conf").string()), IoError);
    {
        std::ofstream c(dir / "badtable.conf");
        c << "coeff_table = nowhere.txt\n" << kMinimal;
    }
    CHECK_THROWS_AS(load_scenario((dir / "badtable.conf").string()), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("constant field config", "[scenario]") {
    const Scenario s = parse(std::string("field.kind = constant\nfield.value_mm_h = 3\n") + kMinimal);
    CHECK(s.field.make()->rate_at({1.0, -1.0}) == 3.0);
}
