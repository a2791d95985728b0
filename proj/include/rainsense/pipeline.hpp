#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rainsense/evaluation.hpp"
#include "rainsense/rainfield.hpp"
#include "rainsense/scenario.hpp"
#include "rainsense/sensors.hpp"

namespace rainsense {

/// In-memory result of one scenario: truth, observations, retrieved map, metrics.
struct Simulation {
    RainGrid truth;
    std::vector<Observation> observations;
    RainGrid estimate;
    std::vector<MaskMetrics> metrics;
};

Simulation simulate(const Scenario& s);

struct RunArtifacts {
    std::filesystem::path truth_csv;
    std::filesystem::path estimate_csv;
    std::filesystem::path observations_csv;
    std::filesystem::path metrics_txt;
    std::filesystem::path truth_pgm;
    std::filesystem::path estimate_pgm;
};

struct RunReport {
    std::string scenario_id;
    std::vector<Observation> observations;
    std::vector<MaskMetrics> metrics;
    RunArtifacts artifacts;

    /// Metrics of the named mask; throws InvalidArgument if absent.
    const MaskMetrics& metric(const std::string& mask_name) const;
};

/// Simulates `s` and writes every artifact into `out_dir` (created if missing).
/// Files are written only after all computation has finished.
RunReport run(const Scenario& s, const std::filesystem::path& out_dir);

/// Writes only the rasterized truth (truth.csv, truth.pgm).
RunArtifacts emit_field(const Scenario& s, const std::filesystem::path& out_dir);

/// Flat `<mask>.<metric> = value` text.
void write_metrics(std::ostream& out, const std::string& scenario_id, const std::vector<MaskMetrics>& metrics);
/// Parses a metrics file back into key -> value text.
std::map<std::string, std::string> read_metrics(const std::filesystem::path& path);

void write_observations_csv(std::ostream& out, const std::vector<Observation>& obs, const Projection& proj);

}  // namespace rainsense
