// src/model.cpp

#include "beq/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "beq/errors.hpp"

namespace beq {

void ModelParams::validate() const {
  const std::array<double, 7> all{alpha, c0, b, gamma, c1, c2, T};
  if (!std::all_of(all.begin(), all.end(), [](double v) { return std::isfinite(v); })) {
    throw InputError("model parameters must be finite");
  }
  if (b == -1.0) throw InputError("b = -1 is excluded: the exact solution divides by b+1");
  if (!(T > 0.0)) throw InputError("blowup time T must be positive");
}

ModelParams preset_params(Preset preset, double T) {
  ModelParams p;
  p.T = T;
  switch (preset) {
    case Preset::CamassaHolm:
      p.alpha = 1.0; p.c0 = 0.0; p.b = 2.0; p.gamma = 0.0; p.c1 = 2.0; p.c2 = 1.0;
      break;
    case Preset::DegasperisProcesi:
      p.alpha = 1.0; p.c0 = 0.0; p.b = 3.0; p.gamma = 0.0; p.c1 = 3.0; p.c2 = 1.0;
      break;
    case Preset::FornbergWhitham:
      p.alpha = 1.0; p.c0 = -1.0; p.b = 0.5; p.gamma = 0.0; p.c1 = 4.5; p.c2 = 1.5;
      break;
    case Preset::KdV:
      // c1, c2 only multiply alpha^2 and are irrelevant here.
      p.alpha = 0.0; p.c0 = 0.0; p.b = 2.0; p.gamma = 1.0; p.c1 = 0.0; p.c2 = 0.0;
      break;
  }
  return p;
}

namespace {

std::string normalized(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace

Preset parse_preset(std::string_view name) {
  const std::string key = normalized(name);
  if (key == "camassaholm" || key == "ch") return Preset::CamassaHolm;
  if (key == "degasperisprocesi" || key == "dp") return Preset::DegasperisProcesi;
  if (key == "fornbergwhitham" || key == "fw") return Preset::FornbergWhitham;
  if (key == "kdv") return Preset::KdV;
  throw InputError("unknown preset '" + std::string(name) + "'");
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::CamassaHolm: return "camassa-holm";
    case Preset::DegasperisProcesi: return "degasperis-procesi";
    case Preset::FornbergWhitham: return "fornberg-whitham";
    case Preset::KdV: return "kdv";
  }
  return "unknown";
}

ModelParams load_preset(std::string_view name, double T) {
  return preset_params(parse_preset(name), T);
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::Stable: return "stable";
    case Regime::Unstable: return "unstable";
    case Regime::Unclassified: return "unclassified";
    case Regime::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

namespace {

// Sign of a numerator built from the listed terms, with zero decided
// relative to the magnitude of those terms.
int tolerant_sign(double value, double scale) {
  if (std::abs(value) <= kRegimeZeroTolerance * std::max(scale, 1.0)) return 0;
  return value > 0.0 ? 1 : -1;
}

}  // namespace

RegimeReport classify(const ModelParams& params) {
  if (params.b == -1.0) throw InputError("b = -1 is excluded");
  const double bp1 = params.b_plus_one();
  RegimeReport r;
  r.numerator_a = 2.0 * bp1 + params.c2 - 2.0 * params.c1;
  r.numerator_b = 2.0 * params.c1 + 1.0 - params.c2;
  r.ratio_a = r.numerator_a / bp1;
  r.ratio_b = r.numerator_b / bp1;

  if (params.alpha == 0.0) {
    r.verdict = Regime::NotApplicable;
    return r;
  }
  const int sign_bp1 = bp1 > 0.0 ? 1 : -1;
  const int sa = tolerant_sign(r.numerator_a,
                               std::abs(2.0 * bp1) + std::abs(params.c2) + std::abs(2.0 * params.c1)) *
                 sign_bp1;
  const int sb = tolerant_sign(r.numerator_b, std::abs(2.0 * params.c1) + 1.0 + std::abs(params.c2)) *
                 sign_bp1;
  if (sa > 0 && sb > 0) {
    r.verdict = Regime::Stable;
  } else if (sa < 0 || (sa == 0 && sb < 0)) {
    r.verdict = Regime::Unstable;
  } else {
    r.verdict = Regime::Unclassified;
  }
  return r;
}

double stable_decay_exponent(const ModelParams& params) { return classify(params).ratio_a; }

}  // namespace beq
