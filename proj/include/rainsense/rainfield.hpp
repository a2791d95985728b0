#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rainsense/geodesy.hpp"

namespace rainsense {

/// Anything that can report an instantaneous rain rate (mm/h) at a local point.
class RainField {
public:
    virtual ~RainField() = default;
    virtual double rate_at(const LocalPoint& p) const = 0;
};

/// Circularly symmetric Gaussian rain cell:
///   R(x, y) = peak * exp(-((x - x0)^2 + (y - y0)^2) / (2 sigma^2))
class GaussianField final : public RainField {
public:
    GaussianField(double peak_mm_h, LocalPoint center, double sigma_km);

    double rate_at(const LocalPoint& p) const override;

    double peak_mm_h() const noexcept { return peak_mm_h_; }
    const LocalPoint& center() const noexcept { return center_; }
    double sigma_km() const noexcept { return sigma_km_; }

private:
    double peak_mm_h_;
    LocalPoint center_;
    double sigma_km_;
};

class ConstantField final : public RainField {
public:
    explicit ConstantField(double rate_mm_h);
    double rate_at(const LocalPoint&) const override { return rate_mm_h_; }

private:
    double rate_mm_h_;
};

/// Superposition of Gaussian cells.
class GaussianSumField final : public RainField {
public:
    explicit GaussianSumField(std::vector<GaussianField> cells);
    double rate_at(const LocalPoint& p) const override;

private:
    std::vector<GaussianField> cells_;
};

/// Raster geometry. Box (row, col) covers
/// [origin.x + col*box, origin.x + (col+1)*box] x [origin.y - (row+1)*box, origin.y - row*box];
/// row 0 is the northernmost row.
struct GridSpec {
    std::size_t nx = 120;
    std::size_t ny = 120;
    double box_size_km = 0.1;
    LocalPoint origin{};  ///< north-west corner

    LocalPoint box_center(std::size_t row, std::size_t col) const {
        return {origin.x_km + (static_cast<double>(col) + 0.5) * box_size_km,
                origin.y_km - (static_cast<double>(row) + 0.5) * box_size_km};
    }
    std::size_t box_count() const { return nx * ny; }

    bool operator==(const GridSpec&) const = default;
};

/// Throws InvalidArgument unless nx, ny >= 1 and the box size is positive and finite.
void validate(const GridSpec& spec);

/// Row-major raster of rain rates. Values are non-negative and finite.
class RainGrid {
public:
    explicit RainGrid(GridSpec spec);
    RainGrid(GridSpec spec, std::vector<double> values);

    const GridSpec& spec() const noexcept { return spec_; }
    std::size_t nx() const noexcept { return spec_.nx; }
    std::size_t ny() const noexcept { return spec_.ny; }

    double at(std::size_t row, std::size_t col) const { return values_[row * spec_.nx + col]; }
    double& at(std::size_t row, std::size_t col) { return values_[row * spec_.nx + col]; }

    std::span<const double> values() const noexcept { return values_; }
    double max_value() const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

/// Field sampled at each box center.
RainGrid rasterize(const RainField& field, const GridSpec& spec);

inline constexpr double kDefaultLineStepKm = 0.01;

/// Midpoint-rule mean of `fn` over the segment a -> b using ceil(|b - a| / step)
/// equal sub-segments. Returns fn(a) for a degenerate segment.
template <typename Fn>
double segment_mean(Fn&& fn, const LocalPoint& a, const LocalPoint& b, double step_km);

/// Average rain rate of `field` along the segment a -> b.
double line_average(const RainField& field, const LocalPoint& a, const LocalPoint& b,
                    double step_km = kDefaultLineStepKm);

// ---------------------------------------------------------------------------

/// Throws InvalidArgument unless the quadrature step is finite and > 0.
void validate_step(double step_km);
std::size_t segment_count(double length_km, double step_km);

template <typename Fn>
double segment_mean(Fn&& fn, const LocalPoint& a, const LocalPoint& b, double step_km) {
    validate_step(step_km);
    const double len = distance_km(a, b);
    if (len == 0.0) return fn(a);
    const std::size_t n = segment_count(len, step_km);
    const double dx = b.x_km - a.x_km;
    const double dy = b.y_km - a.y_km;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        sum += fn(LocalPoint{a.x_km + t * dx, a.y_km + t * dy});
    }
    return sum / static_cast<double>(n);
}

}  // namespace rainsense
