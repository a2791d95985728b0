#pragma once

// Grid file formats.
//
// CSV:  first line `# nx,ny,box_km,origin_lon,origin_lat` carrying those five values
//       (origin = geodetic position of the grid's north-west corner), then ny rows of
//       nx comma-separated values, northernmost row first, printed with 6 significant
//       digits (printf "%#.6g").
// PGM:  binary portable graymap (P5), maxval 255, same row order. Pixel value is
//       round(255 * v / scale_max) clamped to [0, 255].

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rainsense/geodesy.hpp"
#include "rainsense/rainfield.hpp"

namespace rainsense {

/// Shortest text that parses back to exactly `v`.
std::string format_shortest(double v);

/// Value formatted the way the CSV writer prints it.
std::string format_grid_value(double v);

void write_grid_csv(std::ostream& out, const RainGrid& grid, const GeoPoint& nw_corner);
void write_grid_csv(const std::filesystem::path& path, const RainGrid& grid, const GeoPoint& nw_corner);

struct GridFile {
    RainGrid grid;
    GeoPoint nw_corner;
};

/// When `proj` is given the grid's local origin is the projected NW corner,
/// otherwise the NW corner is taken as the local origin (0, 0).
GridFile read_grid_csv(std::istream& in, const Projection* proj = nullptr);
GridFile read_grid_csv(const std::filesystem::path& path, const Projection* proj = nullptr);

std::uint8_t graymap_level(double value, double scale_max);

/// `scale_max` defaults to the grid maximum. A non-positive scale maps everything to 0.
void write_pgm(std::ostream& out, const RainGrid& grid, std::optional<double> scale_max = std::nullopt);
void write_pgm(const std::filesystem::path& path, const RainGrid& grid,
               std::optional<double> scale_max = std::nullopt);

struct Graymap {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<std::uint8_t> pixels;  ///< row-major, top row first

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

Graymap read_pgm(std::istream& in);
Graymap read_pgm(const std::filesystem::path& path);

}  // namespace rainsense
