#include "rainsense/evaluation.hpp"

#include <cmath>

#include "rainsense/errors.hpp"

namespace rainsense {

RegionMask RegionMask::full_square() { return RegionMask(Kind::FullSquare, {}, 0.0); }

RegionMask RegionMask::circle(LocalPoint center, double radius_km) {
    if (!(radius_km > 0.0) || !std::isfinite(radius_km))
        throw InvalidArgument("mask radius must be finite and > 0");
    return RegionMask(Kind::Circle, center, radius_km);
}

bool RegionMask::contains(const LocalPoint& box_center) const {
    if (kind_ == Kind::FullSquare) return true;
    return distance_km(box_center, center_) <= radius_km_;
}

std::size_t RegionMask::count(const GridSpec& spec) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < spec.ny; ++r)
        for (std::size_t c = 0; c < spec.nx; ++c)
            if (contains(spec.box_center(r, c))) ++n;
    return n;
}

namespace {

MaskMetrics summarize(const RainGrid& estimate, const RainGrid& truth, const RegionMask& mask) {
    if (!(estimate.spec() == truth.spec()))
        throw GeometryMismatch("estimate and truth grids have different geometry");
    const GridSpec& spec = truth.spec();

    MaskMetrics m;
    double sum_sq = 0.0;
    double sum = 0.0;
    double sum_abs = 0.0;
    for (std::size_t r = 0; r < spec.ny; ++r) {
        for (std::size_t c = 0; c < spec.nx; ++c) {
            if (!mask.contains(spec.box_center(r, c))) continue;
            const double e = estimate.at(r, c) - truth.at(r, c);
            sum_sq += e * e;
            sum += e;
            sum_abs += std::abs(e);
            ++m.boxes;
        }
    }
    if (m.boxes == 0) throw EmptyMask("mask selects no grid boxes");
    const double n = static_cast<double>(m.boxes);
    m.rmse = std::sqrt(sum_sq / n);
    m.bias = sum / n;
    m.mae = sum_abs / n;
    return m;
}

}  // namespace

double rmse(const RainGrid& estimate, const RainGrid& truth, const RegionMask& mask) {
    return summarize(estimate, truth, mask).rmse;
}

std::vector<MaskMetrics> error_summary(const RainGrid& estimate, const RainGrid& truth,
                                       std::span<const NamedMask> masks) {
    std::vector<MaskMetrics> out;
    out.reserve(masks.size());
    for (const auto& nm : masks) {
        MaskMetrics m = summarize(estimate, truth, nm.mask);
        m.mask_name = nm.name;
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace rainsense
