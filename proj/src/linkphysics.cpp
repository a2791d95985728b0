#include "rainsense/linkphysics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "rainsense/errors.hpp"

namespace rainsense {

void validate(const PowerLawCoeffs& c) {
    if (!(c.alpha > 0.0) || !std::isfinite(c.alpha))
        throw InvalidArgument("power-law alpha must be finite and > 0");
    if (!(c.beta > 0.0) || !std::isfinite(c.beta))
        throw InvalidArgument("power-law beta must be finite and > 0");
}

double specific_attenuation(double rain_rate_mm_h, const PowerLawCoeffs& c) {
    if (!(rain_rate_mm_h >= 0.0)) throw InvalidArgument("rain rate must be >= 0");
    if (rain_rate_mm_h == 0.0) return 0.0;
    return c.alpha * std::pow(rain_rate_mm_h, c.beta);
}

double path_attenuation(const RainField& field, const LinkGeometry& geom, const PowerLawCoeffs& c,
                        double step_km) {
    validate(c);
    const double mean_gamma = segment_mean(
        [&](const LocalPoint& p) { return specific_attenuation(field.rate_at(p), c); },
        geom.ground_start, geom.ground_end, step_km);
    return geom.wet_path_len_km * mean_gamma;
}

double invert_rain_rate(double attenuation_db, double wet_len_km, const PowerLawCoeffs& c) {
    if (!(wet_len_km > 0.0))
        throw DegenerateGeometry("wet path length must be > 0, got " + std::to_string(wet_len_km));
    if (!(attenuation_db >= 0.0)) throw InvalidArgument("attenuation must be >= 0 dB");
    validate(c);
    if (attenuation_db == 0.0) return 0.0;
    return std::pow(attenuation_db / (c.alpha * wet_len_km), 1.0 / c.beta);
}

void validate(const SnrReading& s) {
    if (!(s.eta_dry > 0.0) || !std::isfinite(s.eta_dry)) throw InvalidArgument("dry SNR must be > 0");
    if (!(s.eta_wet > 0.0) || !std::isfinite(s.eta_wet)) throw InvalidArgument("wet SNR must be > 0");
    if (!(s.xi >= 0.0 && s.xi < 1.0)) throw InvalidArgument("xi must lie in [0, 1)");
}

AttenuationEstimate snr_to_attenuation(const SnrReading& s) {
    validate(s);
    const double a_lin = (s.eta_dry / s.eta_wet) * (1.0 - s.xi) + s.xi;
    AttenuationEstimate out;
    out.attenuation_db = 10.0 * std::log10(a_lin);
    out.negative = a_lin < 1.0;
    return out;
}

double wet_snr_for_attenuation(double attenuation_db, double eta_dry, double xi) {
    if (!std::isfinite(attenuation_db)) throw InvalidArgument("attenuation must be finite");
    validate(SnrReading{eta_dry, eta_dry, xi});
    const double a_lin = std::pow(10.0, attenuation_db / 10.0);
    if (!(a_lin > xi)) throw InvalidArgument("attenuation too negative for the given xi");
    return eta_dry * (1.0 - xi) / (a_lin - xi);
}

std::string to_string(Polarization p) { return p == Polarization::Horizontal ? "H" : "V"; }

std::optional<Polarization> parse_polarization(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "h" || lower == "horizontal") return Polarization::Horizontal;
    if (lower == "v" || lower == "vertical") return Polarization::Vertical;
    return std::nullopt;
}

CoeffTable::CoeffTable(std::vector<CoeffEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) validate(e.coeffs);
}

PowerLawCoeffs CoeffTable::lookup(double frequency_ghz, Polarization pol) const {
    for (const auto& e : entries_)
        if (e.polarization == pol && std::abs(e.frequency_ghz - frequency_ghz) <= 1e-6) return e.coeffs;
    throw InvalidArgument("no power-law coefficients for " + std::to_string(frequency_ghz) +
                          " GHz, polarization " + to_string(pol));
}

const CoeffTable& builtin_ku_band_table() {
    using enum Polarization;
    static const CoeffTable table({
        {10.0, Horizontal, {0.0121670, 1.25704}},
        {10.0, Vertical, {0.0112919, 1.21565}},
        {11.0, Horizontal, {0.0177188, 1.21400}},
        {11.0, Vertical, {0.0173073, 1.16171}},
        {12.0, Horizontal, {0.0238578, 1.18247}},
        {12.0, Vertical, {0.0245483, 1.12159}},
        {13.0, Horizontal, {0.0304129, 1.15864}},
        {13.0, Vertical, {0.0326560, 1.09008}},
        {14.0, Horizontal, {0.0373750, 1.13956}},
        {14.0, Vertical, {0.0412583, 1.06463}},
    });
    return table;
}

CoeffTable parse_coeff_table(std::istream& in) {
    std::vector<CoeffEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string freq_tok, pol_tok, alpha_tok, beta_tok, extra;
        if (!(fields >> freq_tok)) continue;
        if (!(fields >> pol_tok >> alpha_tok >> beta_tok) || (fields >> extra))
            throw ParseError(line_no, "", "expected 4 columns: frequency_GHz polarization alpha beta");

        CoeffEntry e;
        try {
            std::size_t used = 0;
            e.frequency_ghz = std::stod(freq_tok, &used);
            if (used != freq_tok.size()) throw std::invalid_argument(freq_tok);
            e.coeffs.alpha = std::stod(alpha_tok, &used);
            if (used != alpha_tok.size()) throw std::invalid_argument(alpha_tok);
            e.coeffs.beta = std::stod(beta_tok, &used);
            if (used != beta_tok.size()) throw std::invalid_argument(beta_tok);
        } catch (const std::logic_error&) {
            throw ParseError(line_no, "", "malformed number");
        }
        auto pol = parse_polarization(pol_tok);
        if (!pol) throw ParseError(line_no, "", "unknown polarization '" + pol_tok + "'");
        e.polarization = *pol;
        try {
            validate(e.coeffs);
        } catch (const InvalidArgument& err) {
            throw ParseError(line_no, "", err.what());
        }
        entries.push_back(e);
    }
    return CoeffTable(std::move(entries));
}

CoeffTable load_coeff_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coefficient table " + path.string());
    return parse_coeff_table(in);
}

}  // namespace rainsense
