#include "rainsense/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rainsense/errors.hpp"
#include "rainsense/linkphysics.hpp"

namespace rainsense {

namespace {

constexpr std::string_view kTestAreaCommon = R"(# Test area near Pisa: 12 km x 12 km, 120 x 120 boxes of 100 m,
# local origin at the north-west vertex.
origin.lon = 10.2691
origin.lat = 43.7040
earth_radius_km = 6371
grid.nx = 120
grid.ny = 120
grid.box_km = 0.1

# Circular Gaussian rain event.
field.kind = gaussian
field.peak_mm_h = 10
field.x0_km = 6
field.y0_km = -6
field.sigma_km = 5

rain_height_km = 2.7
sensor.mode = ideal
sensor.freq_ghz = 12
sensor.pol = H
sensor.xi = 0
sensor.eta_dry = 10

idw.power = 4
idw.epsilon_km = 1e-9
quadrature.step_km = 0.01

central.x_km = 6
central.y_km = -6
central.radius_km = 4
)";

constexpr std::string_view kScenarioAGauges = R"(
[gauge]
id = Bocca D'Arno
lon = 10.2803
lat = 43.6807

[gauge]
id = Podere Rottaia
lon = 10.3104
lat = 43.6687

[gauge]
id = Centro Avanzi
lon = 10.3104
lat = 43.6687

[gauge]
id = Coltano
lon = 10.3909
lat = 43.6379

[gauge]
id = Stagno
lon = 10.3104
lat = 43.5999
)";

constexpr std::string_view kScenarioBSensors = R"(
[gauge]
id = Bocca D'Arno
lon = 10.2803
lat = 43.6807

[gauge]
id = Coltano
lon = 10.3909
lat = 43.6379

[gauge]
id = Stagno
lon = 10.3104
lat = 43.5999

[lnb]
id = Podere Rottaia / Eutelsat 10A
lon = 10.3112
lat = 43.6751
sat_lon = 10.0

[lnb]
id = Podere Rottaia / MonacoSat
lon = 10.3112
lat = 43.6751
sat_lon = 52.0

[lnb]
id = Centro Avanzi / Astra 4A
lon = 10.3464
lat = 43.6800
sat_lon = 4.8

[lnb]
id = Centro Avanzi / Astra 2G
lon = 10.3464
lat = 43.6800
sat_lon = 28.2
)";

const std::string& scenario_a_text() {
    static const std::string text = "# Scenario A: rain gauges only.\nid = paper-A\n" +
                                    std::string(kTestAreaCommon) + std::string(kScenarioAGauges);
    return text;
}

const std::string& scenario_b_text() {
    static const std::string text =
        "# Scenario B: three regional rain gauges plus two multi-satellite sensors.\nid = paper-B\n" +
        std::string(kTestAreaCommon) + std::string(kScenarioBSensors);
    return text;
}

// ---------------------------------------------------------------------------
// Raw key/value structure.

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct Block {
    std::string kind;
    std::size_t line = 0;
    std::vector<Entry> entries;
};

struct RawConfig {
    std::vector<Entry> top;
    std::vector<Block> blocks;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

void add_entry(std::vector<Entry>& entries, Entry e) {
    for (const auto& existing : entries)
        if (existing.key == e.key)
            throw ParseError(e.line, e.key, "duplicate key (first set on line " +
                                                std::to_string(existing.line) + ")");
    entries.push_back(std::move(e));
}

RawConfig parse_raw(std::istream& in) {
    RawConfig raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError(line_no, "", "unterminated block header");
            const std::string kind = trim(std::string_view(t).substr(1, t.size() - 2));
            if (kind != "gauge" && kind != "lnb")
                throw ParseError(line_no, "", "unknown block [" + kind + "], expected [gauge] or [lnb]");
            raw.blocks.push_back({kind, line_no, {}});
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "", "expected 'key = value'");
        Entry e{trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)), line_no};
        if (e.key.empty()) throw ParseError(line_no, "", "empty key");
        add_entry(raw.blocks.empty() ? raw.top : raw.blocks.back().entries, std::move(e));
    }
    return raw;
}

/// Typed access to one key group; every key must be consumed exactly once.
class KeyReader {
public:
    KeyReader(const std::vector<Entry>& entries, std::string context)
        : entries_(entries), used_(entries.size(), false), context_(std::move(context)) {}

    const Entry* find(std::string_view key) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].key == key) {
                used_[i] = true;
                return &entries_[i];
            }
        }
        return nullptr;
    }

    std::optional<std::string> string(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        return e->value;
    }

    std::optional<double> number(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        double v = 0.0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || e->value.empty() || !std::isfinite(v))
            throw ParseError(e->line, e->key, "expected a number, got '" + e->value + "'");
        return v;
    }

    std::optional<std::uint64_t> integer(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        std::uint64_t v = 0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || e->value.empty())
            throw ParseError(e->line, e->key, "expected a non-negative integer, got '" + e->value + "'");
        return v;
    }

    double number_or(std::string_view key, double fallback) { return number(key).value_or(fallback); }

    double required_number(std::string_view key, std::size_t block_line) {
        auto v = number(key);
        if (!v) throw ParseError(block_line, std::string(key), "missing required key in " + context_);
        return *v;
    }

    void reject_unknown() const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!used_[i])
                throw ParseError(entries_[i].line, entries_[i].key, "unknown key in " + context_);
    }

private:
    const std::vector<Entry>& entries_;
    std::vector<bool> used_;
    std::string context_;
};

template <typename T, typename ParseFn>
T parse_enum(KeyReader& r, std::string_view key, T fallback, ParseFn&& parse, const char* expected) {
    const Entry* e = r.find(key);
    if (!e) return fallback;
    auto v = parse(e->value);
    if (!v) throw ParseError(e->line, e->key, std::string("expected ") + expected + ", got '" + e->value + "'");
    return *v;
}

std::optional<FieldKind> parse_field_kind(std::string_view s) {
    if (s == "gaussian") return FieldKind::Gaussian;
    if (s == "constant") return FieldKind::Constant;
    return std::nullopt;
}

struct LinkDefaults {
    SensorMode mode;
    double rain_height_km;
    double freq_ghz;
    Polarization pol;
    double xi;
    double eta_dry;
};

PowerLawCoeffs resolve_coeffs(KeyReader& r, const Block& b, const LinkDefaults& d, const CoeffTable& table) {
    const auto alpha = r.number("alpha");
    const auto beta = r.number("beta");
    const double freq = r.number_or("freq_ghz", d.freq_ghz);
    const Polarization pol = parse_enum(r, "pol", d.pol, parse_polarization, "H or V");
    if (alpha.has_value() != beta.has_value())
        throw ParseError(b.line, alpha ? "beta" : "alpha", "alpha and beta must be given together");
    if (alpha) return {*alpha, *beta};
    try {
        return table.lookup(freq, pol);
    } catch (const InvalidArgument& e) {
        throw ParseError(b.line, "freq_ghz", e.what());
    }
}

Scenario resolve(const RawConfig& raw, const std::filesystem::path& base_dir) {
    Scenario s;
    KeyReader top(raw.top, "scenario header");

    s.id = top.string("id").value_or("custom");
    s.origin.lon_deg = top.number_or("origin.lon", s.origin.lon_deg);
    s.origin.lat_deg = top.number_or("origin.lat", s.origin.lat_deg);
    s.earth_radius_km = top.number_or("earth_radius_km", s.earth_radius_km);

    s.grid.nx = top.integer("grid.nx").value_or(s.grid.nx);
    s.grid.ny = top.integer("grid.ny").value_or(s.grid.ny);
    s.grid.box_size_km = top.number_or("grid.box_km", s.grid.box_size_km);

    s.field.kind = parse_enum(top, "field.kind", s.field.kind, parse_field_kind, "gaussian or constant");
    s.field.peak_mm_h = top.number_or("field.peak_mm_h", s.field.peak_mm_h);
    s.field.center.x_km = top.number_or("field.x0_km", s.field.center.x_km);
    s.field.center.y_km = top.number_or("field.y0_km", s.field.center.y_km);
    s.field.sigma_km = top.number_or("field.sigma_km", s.field.sigma_km);
    s.field.constant_mm_h = top.number_or("field.value_mm_h", s.field.constant_mm_h);

    s.rain_height_km = top.number_or("rain_height_km", s.rain_height_km);
    s.sensor_mode = parse_enum(top, "sensor.mode", s.sensor_mode, parse_sensor_mode, "ideal or physical");
    LinkDefaults defaults{s.sensor_mode,
                          s.rain_height_km,
                          top.number_or("sensor.freq_ghz", 12.0),
                          parse_enum(top, "sensor.pol", Polarization::Horizontal, parse_polarization, "H or V"),
                          top.number_or("sensor.xi", 0.0),
                          top.number_or("sensor.eta_dry", 10.0)};

    s.idw.power = top.number_or("idw.power", s.idw.power);
    s.idw.epsilon_km = top.number_or("idw.epsilon_km", s.idw.epsilon_km);
    s.step_km = top.number_or("quadrature.step_km", s.step_km);
    s.central_center.x_km = top.number_or("central.x_km", s.central_center.x_km);
    s.central_center.y_km = top.number_or("central.y_km", s.central_center.y_km);
    s.central_radius_km = top.number_or("central.radius_km", s.central_radius_km);
    s.noise.sigma_mm_h = top.number_or("noise.sigma_mm_h", s.noise.sigma_mm_h);
    s.noise.seed = top.integer("noise.seed").value_or(s.noise.seed);

    CoeffTable table = builtin_ku_band_table();
    if (const Entry* e = top.find("coeff_table")) {
        std::filesystem::path p(e->value);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        try {
            table = load_coeff_table(p);
        } catch (const Error& err) {
            throw ParseError(e->line, e->key, err.what());
        }
    }
    top.reject_unknown();

    for (const Block& b : raw.blocks) {
        KeyReader r(b.entries, "[" + b.kind + "] block on line " + std::to_string(b.line));
        const auto id = r.string("id");
        if (!id || id->empty()) throw ParseError(b.line, "id", "every sensor block needs an id");
        GeoPoint pos{r.required_number("lon", b.line), r.required_number("lat", b.line)};
        const double alt = r.number_or("alt_km", 0.0);
        if (b.kind == "gauge") {
            s.sensors.gauges.push_back({*id, pos, alt});
        } else {
            MsrsLnb l;
            l.id = *id;
            l.station = pos;
            l.station_alt_km = alt;
            l.sat_lon_deg = r.required_number("sat_lon", b.line);
            l.rain_height_km = r.number_or("rain_height_km", defaults.rain_height_km);
            l.mode = parse_enum(r, "mode", defaults.mode, parse_sensor_mode, "ideal or physical");
            l.coeffs = resolve_coeffs(r, b, defaults, table);
            l.xi = r.number_or("xi", defaults.xi);
            l.eta_dry = r.number_or("eta_dry", defaults.eta_dry);
            s.sensors.lnbs.push_back(std::move(l));
        }
        r.reject_unknown();
    }
    return s;
}

void apply_overrides(RawConfig& raw, const Overrides& overrides) {
    for (const auto& [key, value] : overrides) {
        auto it = std::find_if(raw.top.begin(), raw.top.end(), [&](const Entry& e) { return e.key == key; });
        if (it != raw.top.end())
            it->value = value;
        else
            raw.top.push_back({key, value, 0});
    }
}

void require(bool ok, const std::string& invariant) {
    if (!ok) throw ValidationError("invariant violated: " + invariant);
}

}  // namespace

std::unique_ptr<RainField> FieldConfig::make() const {
    if (kind == FieldKind::Constant) return std::make_unique<ConstantField>(constant_mm_h);
    return std::make_unique<GaussianField>(peak_mm_h, center, sigma_km);
}

std::vector<NamedMask> Scenario::masks() const {
    return {{"extended", RegionMask::full_square()},
            {"central", RegionMask::circle(central_center, central_radius_km)}};
}

std::vector<std::string> builtin_scenario_names() { return {"paper-A", "paper-B"}; }

std::optional<std::string_view> builtin_scenario_text(std::string_view name) {
    if (name == "paper-A") return scenario_a_text();
    if (name == "paper-B") return scenario_b_text();
    return std::nullopt;
}

void validate(const Scenario& s) {
    auto geo_ok = [](const GeoPoint& p) {
        return std::isfinite(p.lon_deg) && std::isfinite(p.lat_deg) && p.lon_deg >= -180.0 &&
               p.lon_deg <= 180.0 && p.lat_deg > -90.0 && p.lat_deg < 90.0;
    };
    require(geo_ok(s.origin), "origin lon in [-180, 180] and lat in (-90, 90)");
    require(s.earth_radius_km > 0.0, "earth_radius_km > 0");
    require(s.grid.nx >= 1 && s.grid.ny >= 1, "grid.nx >= 1 and grid.ny >= 1");
    require(s.grid.box_size_km > 0.0, "grid.box_km > 0");
    if (s.field.kind == FieldKind::Gaussian) {
        require(s.field.peak_mm_h >= 0.0, "field.peak_mm_h >= 0");
        require(s.field.sigma_km > 0.0, "field.sigma_km > 0");
    } else {
        require(s.field.constant_mm_h >= 0.0, "field.value_mm_h >= 0");
    }
    require(s.idw.power > 0.0, "idw.power > 0");
    require(s.idw.epsilon_km > 0.0, "idw.epsilon_km > 0");
    require(s.step_km > 0.0, "quadrature.step_km > 0");
    require(s.central_radius_km > 0.0, "central.radius_km > 0");
    require(s.noise.sigma_mm_h >= 0.0, "noise.sigma_mm_h >= 0");
    require(s.sensors.size() > 0, "at least one [gauge] or [lnb] block");
    for (const auto& g : s.sensors.gauges)
        require(geo_ok(g.position), "gauge '" + g.id + "' has a valid lon/lat");
    for (const auto& l : s.sensors.lnbs) {
        require(geo_ok(l.station), "lnb '" + l.id + "' has a valid lon/lat");
        require(l.rain_height_km > l.station_alt_km, "lnb '" + l.id + "' rain_height_km > alt_km");
        require(l.coeffs.alpha > 0.0 && l.coeffs.beta > 0.0, "lnb '" + l.id + "' alpha > 0 and beta > 0");
        require(l.xi >= 0.0 && l.xi < 1.0, "lnb '" + l.id + "' xi in [0, 1)");
        require(l.eta_dry > 0.0, "lnb '" + l.id + "' eta_dry > 0");
    }
}

Scenario parse_scenario(std::istream& in, const Overrides& overrides, const std::filesystem::path& base_dir) {
    RawConfig raw = parse_raw(in);
    apply_overrides(raw, overrides);
    Scenario s = resolve(raw, base_dir);
    validate(s);
    return s;
}

Scenario load_scenario(std::string_view name_or_path, const Overrides& overrides) {
    if (auto text = builtin_scenario_text(name_or_path)) {
        std::istringstream in{std::string(*text)};
        return parse_scenario(in, overrides);
    }
    const std::filesystem::path path(name_or_path);
    std::ifstream in(path);
    if (!in) throw IoError("no built-in scenario or readable file named '" + std::string(name_or_path) + "'");
    return parse_scenario(in, overrides, path.parent_path());
}

}  // namespace rainsense
