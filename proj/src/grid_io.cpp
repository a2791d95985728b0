#include "rainsense/grid_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rainsense/errors.hpp"

namespace rainsense {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
        throw ParseError(line_no, what, "malformed number '" + std::string(tok) + "'");
    return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

}  // namespace

std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_grid_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.6g", v);
    return buf;
}

void write_grid_csv(std::ostream& out, const RainGrid& grid, const GeoPoint& nw_corner) {
    const GridSpec& s = grid.spec();
    out << "# " << s.nx << ',' << s.ny << ',' << format_shortest(s.box_size_km) << ','
        << format_shortest(nw_corner.lon_deg) << ',' << format_shortest(nw_corner.lat_deg) << '\n';
    std::string row;
    for (std::size_t r = 0; r < s.ny; ++r) {
        row.clear();
        for (std::size_t c = 0; c < s.nx; ++c) {
            if (c) row += ',';
            row += format_grid_value(grid.at(r, c));
        }
        row += '\n';
        out << row;
    }
}

void write_grid_csv(const std::filesystem::path& path, const RainGrid& grid, const GeoPoint& nw_corner) {
    auto out = open_out(path);
    write_grid_csv(out, grid, nw_corner);
    if (!out) throw IoError("failed writing " + path.string());
}

GridFile read_grid_csv(std::istream& in, const Projection* proj) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "", "missing grid header");
    std::string_view header = trim(line);
    if (header.empty() || header.front() != '#') throw ParseError(1, "", "header must start with '#'");
    header.remove_prefix(1);
    const auto head = split_commas(header);
    if (head.size() != 5) throw ParseError(1, "", "header needs nx,ny,box_km,origin_lon,origin_lat");

    GridSpec spec;
    spec.nx = parse_number<std::size_t>(head[0], 1, "nx");
    spec.ny = parse_number<std::size_t>(head[1], 1, "ny");
    spec.box_size_km = parse_number<double>(head[2], 1, "box_km");
    GeoPoint corner{parse_number<double>(head[3], 1, "origin_lon"),
                    parse_number<double>(head[4], 1, "origin_lat")};
    if (spec.nx == 0 || spec.ny == 0 || !(spec.box_size_km > 0.0))
        throw ParseError(1, "", "grid dimensions must be positive");
    if (proj != nullptr) spec.origin = proj->to_local(corner);

    std::vector<double> values;
    values.reserve(spec.box_count());
    std::size_t line_no = 1;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (rows == spec.ny) throw ParseError(line_no, "", "more than ny rows");
        const auto toks = split_commas(line);
        if (toks.size() != spec.nx)
            throw ParseError(line_no, "", "expected " + std::to_string(spec.nx) + " values, got " +
                                              std::to_string(toks.size()));
        for (auto tok : toks) values.push_back(parse_number<double>(tok, line_no, "value"));
        ++rows;
    }
    if (rows != spec.ny)
        throw ParseError(line_no, "", "expected " + std::to_string(spec.ny) + " rows, got " +
                                          std::to_string(rows));
    try {
        return {RainGrid(spec, std::move(values)), corner};
    } catch (const InvalidArgument& e) {
        throw ParseError(line_no, "", e.what());
    }
}

GridFile read_grid_csv(const std::filesystem::path& path, const Projection* proj) {
    auto in = open_in(path);
    return read_grid_csv(in, proj);
}

std::uint8_t graymap_level(double value, double scale_max) {
    if (!(scale_max > 0.0)) return 0;
    const double level = std::round(255.0 * value / scale_max);
    return static_cast<std::uint8_t>(std::clamp(level, 0.0, 255.0));
}

void write_pgm(std::ostream& out, const RainGrid& grid, std::optional<double> scale_max) {
    const double scale = scale_max.value_or(grid.max_value());
    out << "P5\n" << grid.nx() << ' ' << grid.ny() << "\n255\n";
    std::vector<char> row(grid.nx());
    for (std::size_t r = 0; r < grid.ny(); ++r) {
        for (std::size_t c = 0; c < grid.nx(); ++c)
            row[c] = static_cast<char>(graymap_level(grid.at(r, c), scale));
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

void write_pgm(const std::filesystem::path& path, const RainGrid& grid, std::optional<double> scale_max) {
    auto out = open_out(path);
    write_pgm(out, grid, scale_max);
    if (!out) throw IoError("failed writing " + path.string());
}

Graymap read_pgm(std::istream& in) {
    std::string magic;
    Graymap g;
    if (!(in >> magic) || magic != "P5") throw ParseError(1, "", "not a binary graymap (P5)");
    if (!(in >> g.width >> g.height >> g.maxval)) throw ParseError(1, "", "bad graymap header");
    if (g.maxval == 0 || g.maxval > 255) throw ParseError(1, "", "only 8-bit graymaps are supported");
    in.get();  // single whitespace before the raster
    g.pixels.resize(g.width * g.height);
    in.read(reinterpret_cast<char*>(g.pixels.data()), static_cast<std::streamsize>(g.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != g.pixels.size())
        throw ParseError(1, "", "truncated graymap raster");
    return g;
}

Graymap read_pgm(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_pgm(in);
}

}  // namespace rainsense
