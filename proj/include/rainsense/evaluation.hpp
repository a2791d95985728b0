#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rainsense/rainfield.hpp"

namespace rainsense {

/// Selects grid boxes by their center point.
class RegionMask {
public:
    enum class Kind { FullSquare, Circle };

    static RegionMask full_square();
    /// Boxes whose center lies within `radius_km` (inclusive) of `center`.
    static RegionMask circle(LocalPoint center, double radius_km);

    Kind kind() const noexcept { return kind_; }
    const LocalPoint& center() const noexcept { return center_; }
    double radius_km() const noexcept { return radius_km_; }

    bool contains(const LocalPoint& box_center) const;
    std::size_t count(const GridSpec& spec) const;

private:
    RegionMask(Kind kind, LocalPoint center, double radius_km)
        : kind_(kind), center_(center), radius_km_(radius_km) {}

    Kind kind_;
    LocalPoint center_;
    double radius_km_;
};

struct NamedMask {
    std::string name;
    RegionMask mask;
};

/// Root-mean-square difference over the masked boxes.
/// Throws GeometryMismatch if the grids differ in geometry and EmptyMask if no box is selected.
double rmse(const RainGrid& estimate, const RainGrid& truth, const RegionMask& mask);

struct MaskMetrics {
    std::string mask_name;
    std::size_t boxes = 0;
    double rmse = 0.0;
    double bias = 0.0;  ///< mean(estimate - truth)
    double mae = 0.0;
};

std::vector<MaskMetrics> error_summary(const RainGrid& estimate, const RainGrid& truth,
                                       std::span<const NamedMask> masks);

}  // namespace rainsense
