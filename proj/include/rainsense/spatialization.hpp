#pragma once

#include <span>

#include "rainsense/rainfield.hpp"
#include "rainsense/sensors.hpp"

namespace rainsense {

/// Inverse-distance weighting parameters. Weights are d^-power.
struct IdwConfig {
    double power = 4.0;
    /// Points closer than this to an observation take its value exactly.
    double epsilon_km = 1e-9;
};

void validate(const IdwConfig& cfg);

/// IDW estimate at one point: sum(v_n d_n^-p) / sum(d_n^-p).
/// If some observation lies within epsilon, the nearest such one (lowest index on
/// ties) is returned as-is. Throws EmptyObservations.
double idw_at_point(std::span<const Observation> obs, const LocalPoint& p, const IdwConfig& cfg = {});

/// idw_at_point evaluated at every box center.
RainGrid idw_interpolate(std::span<const Observation> obs, const GridSpec& spec,
                         const IdwConfig& cfg = {});

}  // namespace rainsense
