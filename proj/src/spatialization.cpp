#include "rainsense/spatialization.hpp"

#include <cmath>
#include <cstddef>

#include "rainsense/errors.hpp"

namespace rainsense {

void validate(const IdwConfig& cfg) {
    if (!(cfg.power > 0.0) || !std::isfinite(cfg.power)) throw InvalidArgument("IDW power must be > 0");
    if (!(cfg.epsilon_km > 0.0) || !std::isfinite(cfg.epsilon_km))
        throw InvalidArgument("IDW epsilon must be > 0");
}

namespace {

double idw_unchecked(std::span<const Observation> obs, const LocalPoint& p, const IdwConfig& cfg) {
    double num = 0.0;
    double den = 0.0;
    const Observation* coincident = nullptr;
    double coincident_d = 0.0;
    for (const auto& o : obs) {
        const double d = distance_km(p, o.position);
        if (d < cfg.epsilon_km) {
            if (coincident == nullptr || d < coincident_d) {
                coincident = &o;
                coincident_d = d;
            }
            continue;
        }
        const double w = std::pow(d, -cfg.power);
        num += o.rain_rate_mm_h * w;
        den += w;
    }
    if (coincident != nullptr) return coincident->rain_rate_mm_h;
    return num / den;
}

}  // namespace

double idw_at_point(std::span<const Observation> obs, const LocalPoint& p, const IdwConfig& cfg) {
    if (obs.empty()) throw EmptyObservations("IDW needs at least one observation");
    validate(cfg);
    return idw_unchecked(obs, p, cfg);
}

RainGrid idw_interpolate(std::span<const Observation> obs, const GridSpec& spec, const IdwConfig& cfg) {
    if (obs.empty()) throw EmptyObservations("IDW needs at least one observation");
    validate(cfg);
    RainGrid grid(spec);
    for (std::size_t r = 0; r < spec.ny; ++r)
        for (std::size_t c = 0; c < spec.nx; ++c)
            grid.at(r, c) = idw_unchecked(obs, spec.box_center(r, c), cfg);
    return grid;
}

}  // namespace rainsense
