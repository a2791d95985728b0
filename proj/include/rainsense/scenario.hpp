#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rainsense/evaluation.hpp"
#include "rainsense/geodesy.hpp"
#include "rainsense/rainfield.hpp"
#include "rainsense/sensors.hpp"
#include "rainsense/spatialization.hpp"

namespace rainsense {

enum class FieldKind { Gaussian, Constant };

struct FieldConfig {
    FieldKind kind = FieldKind::Gaussian;
    double peak_mm_h = 10.0;
    LocalPoint center{6.0, -6.0};
    double sigma_km = 5.0;
    double constant_mm_h = 0.0;

    std::unique_ptr<RainField> make() const;
};

/// A fully resolved, validated simulation setup.
struct Scenario {
    std::string id;
    GeoPoint origin{10.2691, 43.7040};
    double earth_radius_km = kMeanEarthRadiusKm;
    GridSpec grid{};
    FieldConfig field;
    double rain_height_km = 2.7;
    SensorMode sensor_mode = SensorMode::Ideal;
    SensorSet sensors;
    IdwConfig idw;
    LocalPoint central_center{6.0, -6.0};
    double central_radius_km = 4.0;
    double step_km = kDefaultLineStepKm;
    ObservationNoise noise;

    Projection projection() const { return Projection(origin, earth_radius_km); }
    /// "extended" (the whole grid) and "central" (the event circle).
    std::vector<NamedMask> masks() const;
};

/// `key=value` pairs applied on top of a scenario's top-level keys.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Names of the built-in scenarios ("paper-A", "paper-B").
std::vector<std::string> builtin_scenario_names();
/// Config text of a built-in scenario, or nullopt for an unknown name.
std::optional<std::string_view> builtin_scenario_text(std::string_view name);

/// Parses config text. `base_dir` resolves relative `coeff_table` paths.
Scenario parse_scenario(std::istream& in, const Overrides& overrides = {},
                        const std::filesystem::path& base_dir = {});

/// A built-in name or a path to a config file. Built-in names never touch the filesystem.
Scenario load_scenario(std::string_view name_or_path, const Overrides& overrides = {});

/// Throws ValidationError naming the first violated invariant.
void validate(const Scenario& s);

}  // namespace rainsense
