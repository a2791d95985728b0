#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rainsense/geodesy.hpp"
#include "rainsense/rainfield.hpp"

namespace rainsense {

/// Power-law coefficients of the specific rain attenuation gamma = alpha * R^beta
/// (gamma in dB/km, R in mm/h).
struct PowerLawCoeffs {
    double alpha = 0.0;
    double beta = 1.0;
};

/// Throws InvalidArgument unless alpha > 0 and beta > 0.
void validate(const PowerLawCoeffs& c);

double specific_attenuation(double rain_rate_mm_h, const PowerLawCoeffs& c);

/// Rain attenuation (dB) of a wet link through `field`. The specific attenuation is
/// averaged over the ground projection of the link and scaled by the slant length L,
/// i.e. rain is vertically uniform below the rain height.
double path_attenuation(const RainField& field, const LinkGeometry& geom, const PowerLawCoeffs& c,
                        double step_km = kDefaultLineStepKm);

/// Path-averaged rain rate implied by an attenuation over a wet path of length L:
/// R = (A / (alpha L))^(1/beta). Throws DegenerateGeometry when L <= 0.
double invert_rain_rate(double attenuation_db, double wet_len_km, const PowerLawCoeffs& c);

/// Receiver Es/N0 readings, linear scale.
struct SnrReading {
    double eta_dry = 1.0;
    double eta_wet = 1.0;
    double xi = 0.0;  ///< noise-contribution design parameter, [0, 1)
};

void validate(const SnrReading& s);

struct AttenuationEstimate {
    double attenuation_db = 0.0;
    /// Set when the wet reading exceeds the dry reference (baseline drift).
    bool negative = false;
};

/// A = 10 log10((eta_dry / eta_wet)(1 - xi) + xi).
AttenuationEstimate snr_to_attenuation(const SnrReading& s);

/// Wet-condition SNR a receiver with the given dry reference reports under
/// `attenuation_db` of rain loss; the inverse of snr_to_attenuation.
double wet_snr_for_attenuation(double attenuation_db, double eta_dry, double xi);

enum class Polarization { Horizontal, Vertical };

std::string to_string(Polarization p);
/// Accepts "H"/"V" or "horizontal"/"vertical", case-insensitive.
std::optional<Polarization> parse_polarization(std::string_view text);

struct CoeffEntry {
    double frequency_ghz = 0.0;
    Polarization polarization = Polarization::Horizontal;
    PowerLawCoeffs coeffs;
};

/// Frequency/polarization keyed power-law coefficient table.
class CoeffTable {
public:
    CoeffTable() = default;
    explicit CoeffTable(std::vector<CoeffEntry> entries);

    const std::vector<CoeffEntry>& entries() const noexcept { return entries_; }

    /// Exact match on polarization, frequency within 1e-6 GHz. Throws InvalidArgument if absent.
    PowerLawCoeffs lookup(double frequency_ghz, Polarization pol) const;

private:
    std::vector<CoeffEntry> entries_;
};

/// Ku-band coefficients (10-14 GHz, H and V) evaluated from the ITU-R P.838-3 regressions.
const CoeffTable& builtin_ku_band_table();

/// Rows of `frequency_GHz polarization alpha beta`, separated by whitespace or commas.
/// Blank lines and `#` comments are skipped.
CoeffTable parse_coeff_table(std::istream& in);
CoeffTable load_coeff_table(const std::filesystem::path& path);

}  // namespace rainsense
