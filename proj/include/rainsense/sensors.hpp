#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rainsense/geodesy.hpp"
#include "rainsense/linkphysics.hpp"
#include "rainsense/rainfield.hpp"

namespace rainsense {

/// How a link sensor turns the rain along its path into a rain-rate reading.
enum class SensorMode {
    Ideal,     ///< reads the ground-projection line average directly
    Physical,  ///< attenuation -> simulated SNR -> attenuation -> power-law inversion
};

std::string to_string(SensorMode m);
std::optional<SensorMode> parse_sensor_mode(std::string_view text);

struct RainGauge {
    std::string id;
    GeoPoint position;
    double altitude_km = 0.0;
};

/// One receiving head of a multi-satellite rain sensor, pointed at one GEO satellite.
struct MsrsLnb {
    std::string id;
    GeoPoint station;
    double station_alt_km = 0.0;
    double sat_lon_deg = 0.0;
    double rain_height_km = 2.7;
    SensorMode mode = SensorMode::Ideal;
    // Physical mode only.
    PowerLawCoeffs coeffs{0.0238578, 1.18247};
    double xi = 0.0;
    double eta_dry = 10.0;  ///< clear-sky Es/N0 reference, linear
};

/// A point rain-rate value handed to the interpolator.
struct Observation {
    std::string source_id;
    LocalPoint position;
    double rain_rate_mm_h = 0.0;
};

struct SensorSet {
    std::vector<RainGauge> gauges;
    std::vector<MsrsLnb> lnbs;

    std::size_t size() const noexcept { return gauges.size() + lnbs.size(); }
};

/// Additive Gaussian measurement noise; off when sigma is zero.
/// Noisy values are clamped at zero.
struct ObservationNoise {
    double sigma_mm_h = 0.0;
    std::uint64_t seed = 0;

    bool enabled() const noexcept { return sigma_mm_h > 0.0; }
};

Observation observe_gauge(const RainGauge& gauge, const RainField& field, const Projection& proj);

LinkGeometry lnb_geometry(const MsrsLnb& lnb, const Projection& proj);

/// Virtual rain gauge at the end of the link's ground projection.
Observation observe_lnb(const MsrsLnb& lnb, const RainField& field, const Projection& proj,
                        double step_km = kDefaultLineStepKm);

/// Gauges first, then LNBs, each in declaration order. Per-sensor failures are
/// collected and rethrown together as SensorError.
std::vector<Observation> observe_all(const SensorSet& sensors, const RainField& field,
                                     const Projection& proj, double step_km = kDefaultLineStepKm,
                                     const ObservationNoise& noise = {});

}  // namespace rainsense
