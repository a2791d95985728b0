// rainsense: synthetic rain-field simulation, opportunistic link sensing and IDW retrieval.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rainsense/errors.hpp"
#include "rainsense/geodesy.hpp"
#include "rainsense/linkphysics.hpp"
#include "rainsense/pipeline.hpp"
#include "rainsense/scenario.hpp"
#include "rainsense/sensors.hpp"

namespace {

using namespace rainsense;

struct ScenarioArgs {
    std::string scenario;
    std::vector<std::string> sets;
    std::string mode;
    double radius_km = 0.0;
    double step_km = 0.0;
    double power = 0.0;
};

void add_scenario_args(CLI::App* cmd, ScenarioArgs& a) {
    cmd->add_option("scenario", a.scenario, "Built-in scenario (paper-A, paper-B) or config file")->required();
    cmd->add_option("--set", a.sets, "Override a top-level scenario key, e.g. --set field.sigma_km=4");
    cmd->add_option("--mode", a.mode, "Link sensor mode (sensor.mode)")->check(CLI::IsMember({"ideal", "physical"}));
    cmd->add_option("--radius", a.radius_km, "Central-sector radius in km (central.radius_km)");
    cmd->add_option("--step", a.step_km, "Line quadrature step in km (quadrature.step_km)");
    cmd->add_option("--power", a.power, "IDW distance exponent (idw.power)");
}

Scenario load(const ScenarioArgs& a) {
    Overrides ov;
    for (const auto& kv : a.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
        ov.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (!a.mode.empty()) ov.emplace_back("sensor.mode", a.mode);
    if (a.radius_km != 0.0) ov.emplace_back("central.radius_km", num(a.radius_km));
    if (a.step_km != 0.0) ov.emplace_back("quadrature.step_km", num(a.step_km));
    if (a.power != 0.0) ov.emplace_back("idw.power", num(a.power));
    return load_scenario(a.scenario, ov);
}

void print_run(const RunReport& r) {
    std::printf("scenario %s: %zu observations\n", r.scenario_id.c_str(), r.observations.size());
    for (const auto& o : r.observations)
        std::printf("  %-34s x=%8.3f km  y=%8.3f km  R=%8.4f mm/h\n", o.source_id.c_str(), o.position.x_km,
                    o.position.y_km, o.rain_rate_mm_h);
    for (const auto& m : r.metrics)
        std::printf("%-9s boxes=%6zu  rmse=%.4f  bias=%+.4f  mae=%.4f mm/h\n", m.mask_name.c_str(), m.boxes,
                    m.rmse, m.bias, m.mae);
    std::printf("wrote %s\n", r.artifacts.metrics_txt.parent_path().string().c_str());
}

void print_geometry(const Scenario& s) {
    const Projection proj = s.projection();
    if (s.sensors.lnbs.empty()) {
        std::printf("scenario %s has no link sensors\n", s.id.c_str());
        return;
    }
    std::printf("%-34s %8s %8s %8s %8s %8s %9s %9s %10s %10s\n", "lnb", "sat_lon", "elev", "azim", "L_km",
                "D_km", "end_x_km", "end_y_km", "end_lon", "end_lat");
    for (const auto& l : s.sensors.lnbs) {
        const LinkGeometry g = lnb_geometry(l, proj);
        const GeoPoint end = proj.from_local(g.ground_end);
        std::printf("%-34s %8.3f %8.3f %8.3f %8.4f %8.4f %9.4f %9.4f %10.5f %10.5f\n", l.id.c_str(),
                    l.sat_lon_deg, g.elevation_deg, g.azimuth_deg, g.wet_path_len_km, g.ground_proj_len_km,
                    g.ground_end.x_km, g.ground_end.y_km, end.lon_deg, end.lat_deg);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opportunistic rainfall-map simulator"};
    app.require_subcommand(1);

    ScenarioArgs run_args;
    std::string run_out = "out";
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write grids, observations and metrics");
    add_scenario_args(run_cmd, run_args);
    run_cmd->add_option("--out", run_out, "Output directory")->required();

    ScenarioArgs field_args;
    std::string field_out = "out";
    auto* field_cmd = app.add_subcommand("field", "Write the rasterized truth grid only");
    add_scenario_args(field_cmd, field_args);
    field_cmd->add_option("--out", field_out, "Output directory")->required();

    ScenarioArgs geo_args;
    auto* geo_cmd = app.add_subcommand("geometry", "Print look angles, wet path length and virtual gauge per LNB");
    add_scenario_args(geo_cmd, geo_args);

    double inv_a = 0.0, inv_l = 0.0, inv_alpha = 0.0, inv_beta = 0.0;
    auto* inv_cmd = app.add_subcommand("invert", "Rain rate from path attenuation: (A / (alpha L))^(1/beta)");
    inv_cmd->add_option("--a", inv_a, "Attenuation (dB)")->required();
    inv_cmd->add_option("--L", inv_l, "Wet path length (km)")->required();
    inv_cmd->add_option("--alpha", inv_alpha, "Power-law alpha")->required();
    inv_cmd->add_option("--beta", inv_beta, "Power-law beta")->required();

    double snr_dry = 0.0, snr_wet = 0.0, snr_xi = 0.0;
    bool snr_db = false;
    auto* snr_cmd = app.add_subcommand("snr2att", "Attenuation (dB) from dry/wet Es/N0 readings");
    snr_cmd->add_option("--dry", snr_dry, "Clear-sky Es/N0 (linear unless --db)")->required();
    snr_cmd->add_option("--wet", snr_wet, "Rain-time Es/N0 (linear unless --db)")->required();
    snr_cmd->add_option("--xi", snr_xi, "Noise-contribution parameter in [0, 1)");
    snr_cmd->add_flag("--db", snr_db, "Interpret --dry/--wet in dB");

    std::string show_name;
    auto* show_cmd = app.add_subcommand("show", "Print the config text of a built-in scenario");
    show_cmd->add_option("name", show_name, "paper-A or paper-B")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            print_run(run(load(run_args), run_out));
        } else if (*field_cmd) {
            const auto a = emit_field(load(field_args), field_out);
            std::printf("wrote %s and %s\n", a.truth_csv.string().c_str(), a.truth_pgm.string().c_str());
        } else if (*geo_cmd) {
            print_geometry(load(geo_args));
        } else if (*inv_cmd) {
            std::printf("%.6f\n", invert_rain_rate(inv_a, inv_l, {inv_alpha, inv_beta}));
        } else if (*snr_cmd) {
            SnrReading s{snr_dry, snr_wet, snr_xi};
            if (snr_db) {
                s.eta_dry = std::pow(10.0, snr_dry / 10.0);
                s.eta_wet = std::pow(10.0, snr_wet / 10.0);
            }
            const auto a = snr_to_attenuation(s);
            std::printf("%.6f\n", a.attenuation_db);
            if (a.negative) std::fprintf(stderr, "warning: wet SNR above dry reference (baseline drift)\n");
        } else if (*show_cmd) {
            const auto text = builtin_scenario_text(show_name);
            if (!text) {
                std::fprintf(stderr, "error: unknown built-in scenario '%s'\n", show_name.c_str());
                return 2;
            }
            std::cout << *text;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const rainsense::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
