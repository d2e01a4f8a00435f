// include/beq/model.hpp
//
// Parameters of the generalized b-equation
//
//   u_t - a^2 u_txx + c0 u_x + (b+1) u u_x + G u_xxx = a^2 (c1 u_x u_xx + c2 u u_xxx)
//
// the named special cases, and the stability-regime classifier.

#pragma once

#include <string>
#include <string_view>

namespace beq {

struct ModelParams {
  double alpha = 1.0;  ///< dispersion length
  double c0 = 0.0;     ///< linear transport speed
  double b = 2.0;      ///< convection parameter, b != -1
  double gamma = 0.0;  ///< third-derivative dispersion
  double c1 = 2.0;
  double c2 = 1.0;
  double T = 1.0;  ///< blowup time, T > 0

  double b_plus_one() const { return b + 1.0; }

  /// Throws InputError when b = -1 or T <= 0 or any entry is non-finite.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

enum class Preset { CamassaHolm, DegasperisProcesi, FornbergWhitham, KdV };

/// Parameters of a named special case, with blowup time T.
ModelParams preset_params(Preset preset, double T = 1.0);

/// Accepts "camassa-holm", "degasperis-procesi", "fornberg-whitham", "kdv",
/// the enum spellings ("CamassaHolm", ...) and the abbreviations ch/dp/fw.
Preset parse_preset(std::string_view name);

std::string_view preset_name(Preset preset);

/// load_preset: name -> parameter tuple. Unknown names throw InputError.
ModelParams load_preset(std::string_view name, double T = 1.0);

enum class Regime { Stable, Unstable, Unclassified, NotApplicable };

std::string_view regime_name(Regime regime);

struct RegimeReport {
  double ratio_a = 0.0;      ///< (2(b+1) + c2 - 2c1) / (b+1)
  double ratio_b = 0.0;      ///< (2c1 + 1 - c2) / (b+1)
  double numerator_a = 0.0;  ///< 2(b+1) + c2 - 2c1
  double numerator_b = 0.0;  ///< 2c1 + 1 - c2
  Regime verdict = Regime::Unclassified;
};

/// Relative tolerance used when comparing the numerators against zero.
inline constexpr double kRegimeZeroTolerance = 1e-12;

/// Stable iff both ratios are positive; Unstable iff ratio_a < 0, or
/// numerator_a = 0 and ratio_b < 0; NotApplicable when alpha = 0.
/// Gamma and c0 do not enter. Throws InputError for b = -1.
RegimeReport classify(const ModelParams& params);

/// Decay exponent of the stable branch (ratio_a); same code path as classify.
double stable_decay_exponent(const ModelParams& params);

}  // namespace beq
