#include "rainsense/sensors.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "rainsense/errors.hpp"

namespace rainsense {

std::string to_string(SensorMode m) { return m == SensorMode::Ideal ? "ideal" : "physical"; }

std::optional<SensorMode> parse_sensor_mode(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "ideal") return SensorMode::Ideal;
    if (lower == "physical") return SensorMode::Physical;
    return std::nullopt;
}

Observation observe_gauge(const RainGauge& gauge, const RainField& field, const Projection& proj) {
    validate(gauge.position);
    const LocalPoint at = proj.to_local(gauge.position);
    return {gauge.id, at, field.rate_at(at)};
}

LinkGeometry lnb_geometry(const MsrsLnb& lnb, const Projection& proj) {
    return slant_geometry(lnb.station, lnb.station_alt_km, lnb.sat_lon_deg, lnb.rain_height_km, proj);
}

namespace {

double physical_reading(const MsrsLnb& lnb, const RainField& field, const LinkGeometry& geom,
                        double step_km) {
    const double a_true = path_attenuation(field, geom, lnb.coeffs, step_km);
    const double eta_wet = wet_snr_for_attenuation(a_true, lnb.eta_dry, lnb.xi);
    const AttenuationEstimate a = snr_to_attenuation({lnb.eta_dry, eta_wet, lnb.xi});
    // Round-off can push a zero-rain reading a hair below 0 dB.
    const double a_db = a.negative ? 0.0 : a.attenuation_db;
    return invert_rain_rate(a_db, geom.wet_path_len_km, lnb.coeffs);
}

}  // namespace

Observation observe_lnb(const MsrsLnb& lnb, const RainField& field, const Projection& proj,
                        double step_km) {
    validate_step(step_km);
    const LinkGeometry geom = lnb_geometry(lnb, proj);
    double value = 0.0;
    switch (lnb.mode) {
        case SensorMode::Ideal:
            value = line_average(field, geom.ground_start, geom.ground_end, step_km);
            break;
        case SensorMode::Physical:
            value = physical_reading(lnb, field, geom, step_km);
            break;
    }
    return {lnb.id, geom.ground_end, value};
}

std::vector<Observation> observe_all(const SensorSet& sensors, const RainField& field,
                                     const Projection& proj, double step_km,
                                     const ObservationNoise& noise) {
    if (sensors.size() == 0) throw InvalidArgument("sensor set is empty");

    std::vector<Observation> out;
    out.reserve(sensors.size());
    std::vector<SensorError::Failure> failures;
    for (const auto& g : sensors.gauges) {
        try {
            out.push_back(observe_gauge(g, field, proj));
        } catch (const Error& e) {
            failures.push_back({g.id, e.what()});
        }
    }
    for (const auto& l : sensors.lnbs) {
        try {
            out.push_back(observe_lnb(l, field, proj, step_km));
        } catch (const Error& e) {
            failures.push_back({l.id, e.what()});
        }
    }
    if (!failures.empty()) throw SensorError(std::move(failures));

    if (noise.enabled()) {
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> dist(0.0, noise.sigma_mm_h);
        for (auto& o : out) o.rain_rate_mm_h = std::max(0.0, o.rain_rate_mm_h + dist(rng));
    }
    return out;
}

}  // namespace rainsense
