// src/spectral.cpp

#include "beq/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "beq/errors.hpp"

namespace beq {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer real_buffer(std::size_t m) {
  return RealBuffer(static_cast<double*>(fftw_malloc(sizeof(double) * m)));
}
ComplexBuffer complex_buffer(std::size_t m) {
  return ComplexBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1))));
}

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// The FFTW planner is not thread-safe; executing a plan on fresh
// fftw_malloc'd arrays is. FFTW_ESTIMATE keeps plan choice deterministic.
const PlanPair& plans_for(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  RealBuffer r = real_buffer(m);
  ComplexBuffer c = complex_buffer(m);
  const int mi = static_cast<int>(m);
  PlanPair p{fftw_plan_dft_r2c_1d(mi, r.get(), c.get(), FFTW_ESTIMATE),
             fftw_plan_dft_c2r_1d(mi, c.get(), r.get(), FFTW_ESTIMATE)};
  return cache.emplace(m, p).first->second;
}

double symbol_value(double xi, double s, double alpha, SobolevSymbol symbol) {
  const double a = symbol == SobolevSymbol::Alpha ? alpha : 1.0;
  if (s == 0.0) return 1.0;
  return std::pow(1.0 + a * a * xi * xi, s);
}

// Multiplicity of a half-spectrum coefficient in the full spectrum.
double multiplicity(std::size_t k, std::size_t m) { return (k == 0 || 2 * k == m) ? 1.0 : 2.0; }

}  // namespace

std::size_t padded_size(std::size_t n) {
  std::size_t m = 1;
  while (m < 2 * n) m <<= 1;
  return m;
}

PaddedSpectrum::PaddedSpectrum(std::span<const double> values, double spacing)
    : n_(values.size()), m_(padded_size(values.size())), h_(spacing) {
  if (values.empty()) throw InputError("cannot transform an empty field");
  if (!(spacing > 0.0)) throw InputError("spacing must be positive");
  const PlanPair& plans = plans_for(m_);
  RealBuffer in = real_buffer(m_);
  ComplexBuffer out = complex_buffer(m_);
  std::copy(values.begin(), values.end(), in.get());
  std::fill(in.get() + n_, in.get() + m_, 0.0);
  fftw_execute_dft_r2c(plans.forward, in.get(), out.get());
  coeffs_.resize(m_ / 2 + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = {out[k][0], out[k][1]};
}

double PaddedSpectrum::wavenumber(std::size_t k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(m_) * h_);
}

double PaddedSpectrum::sobolev_norm_squared(double s, double alpha, SobolevSymbol symbol) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    sum += multiplicity(k, m_) * symbol_value(wavenumber(k), s, alpha, symbol) * std::norm(coeffs_[k]);
  }
  return sum * h_ / static_cast<double>(m_);
}

double PaddedSpectrum::sobolev_inner(const PaddedSpectrum& other, double s, double alpha,
                                     SobolevSymbol symbol) const {
  if (other.m_ != m_ || other.h_ != h_) throw InputError("inner product of incompatible spectra");
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    sum += multiplicity(k, m_) * symbol_value(wavenumber(k), s, alpha, symbol) *
           (std::conj(coeffs_[k]) * other.coeffs_[k]).real();
  }
  return sum * h_ / static_cast<double>(m_);
}

std::vector<double> PaddedSpectrum::inverse() const {
  const PlanPair& plans = plans_for(m_);
  ComplexBuffer in = complex_buffer(m_);
  RealBuffer out = real_buffer(m_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    in[k][0] = coeffs_[k].real();
    in[k][1] = coeffs_[k].imag();
  }
  fftw_execute_dft_c2r(plans.backward, in.get(), out.get());
  std::vector<double> v(n_);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = out[i] * scale;
  return v;
}

double spectral_sobolev_norm(std::span<const double> values, double spacing, double s, double alpha,
                             SobolevSymbol symbol) {
  return std::sqrt(PaddedSpectrum(values, spacing).sobolev_norm_squared(s, alpha, symbol));
}

void dealias_two_thirds(std::span<double> values, double spacing) {
  PaddedSpectrum spec(values, spacing);
  const double cutoff = (2.0 / 3.0) * std::numbers::pi / spacing;
  auto& c = spec.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (spec.wavenumber(k) > cutoff) c[k] = 0.0;
  }
  const std::vector<double> filtered = spec.inverse();
  std::copy(filtered.begin(), filtered.end(), values.begin());
}

}  // namespace beq
