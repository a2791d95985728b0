#include "rainsense/rainfield.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rainsense/errors.hpp"

namespace rainsense {

GaussianField::GaussianField(double peak_mm_h, LocalPoint center, double sigma_km)
    : peak_mm_h_(peak_mm_h), center_(center), sigma_km_(sigma_km) {
    if (!(peak_mm_h_ >= 0.0) || !std::isfinite(peak_mm_h_))
        throw InvalidArgument("Gaussian peak must be finite and >= 0");
    if (!(sigma_km_ > 0.0) || !std::isfinite(sigma_km_))
        throw InvalidArgument("Gaussian sigma must be finite and > 0");
    if (!std::isfinite(center_.x_km) || !std::isfinite(center_.y_km))
        throw InvalidArgument("Gaussian center must be finite");
}

double GaussianField::rate_at(const LocalPoint& p) const {
    const double dx = p.x_km - center_.x_km;
    const double dy = p.y_km - center_.y_km;
    return peak_mm_h_ * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_km_ * sigma_km_));
}

ConstantField::ConstantField(double rate_mm_h) : rate_mm_h_(rate_mm_h) {
    if (!(rate_mm_h_ >= 0.0) || !std::isfinite(rate_mm_h_))
        throw InvalidArgument("constant rain rate must be finite and >= 0");
}

GaussianSumField::GaussianSumField(std::vector<GaussianField> cells) : cells_(std::move(cells)) {}

double GaussianSumField::rate_at(const LocalPoint& p) const {
    double sum = 0.0;
    for (const auto& c : cells_) sum += c.rate_at(p);
    return sum;
}

void validate(const GridSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1) throw InvalidArgument("grid needs at least one box per axis");
    if (!(spec.box_size_km > 0.0) || !std::isfinite(spec.box_size_km))
        throw InvalidArgument("grid box size must be finite and > 0");
    if (!std::isfinite(spec.origin.x_km) || !std::isfinite(spec.origin.y_km))
        throw InvalidArgument("grid origin must be finite");
}

RainGrid::RainGrid(GridSpec spec) : spec_(spec) {
    validate(spec_);
    values_.assign(spec_.box_count(), 0.0);
}

RainGrid::RainGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    validate(spec_);
    if (values_.size() != spec_.box_count())
        throw InvalidArgument("grid has " + std::to_string(values_.size()) + " values, expected " +
                              std::to_string(spec_.box_count()));
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("grid values must be finite and >= 0");
}

double RainGrid::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

RainGrid rasterize(const RainField& field, const GridSpec& spec) {
    RainGrid grid(spec);
    for (std::size_t r = 0; r < spec.ny; ++r)
        for (std::size_t c = 0; c < spec.nx; ++c) grid.at(r, c) = field.rate_at(spec.box_center(r, c));
    return grid;
}

void validate_step(double step_km) {
    if (!(step_km > 0.0) || !std::isfinite(step_km))
        throw InvalidArgument("quadrature step must be finite and > 0");
}

std::size_t segment_count(double length_km, double step_km) {
    validate_step(step_km);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length_km / step_km)));
}

double line_average(const RainField& field, const LocalPoint& a, const LocalPoint& b,
                    double step_km) {
    return segment_mean([&field](const LocalPoint& p) { return field.rate_at(p); }, a, b, step_km);
}

}  // namespace rainsense
