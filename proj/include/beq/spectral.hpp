// include/beq/spectral.hpp
//
// Zero-padded discrete Fourier transforms of grid fields. Used for the
// Sobolev norms (symbol (1 + a^2 xi^2)^s), H^s inner products and the
// 2/3-rule dealiasing filter.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace beq {

/// Smallest power of two >= 2n.
std::size_t padded_size(std::size_t n);

enum class SobolevSymbol {
  Alpha,     ///< (1 + alpha^2 xi^2)^s
  Standard,  ///< (1 + xi^2)^s
};

class PaddedSpectrum {
 public:
  /// Real-to-complex transform of `values` zero-padded to padded_size(n).
  PaddedSpectrum(std::span<const double> values, double spacing);

  std::size_t transform_size() const { return m_; }
  std::size_t field_size() const { return n_; }
  double spacing() const { return h_; }
  /// Angular wavenumber of coefficient k, 0 <= k <= M/2.
  double wavenumber(std::size_t k) const;
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  std::vector<std::complex<double>>& coefficients() { return coeffs_; }

  /// sum_k w(xi_k) |G_k|^2 h / M over the full spectrum; equals h sum g_j^2 for s = 0.
  double sobolev_norm_squared(double s, double alpha, SobolevSymbol symbol = SobolevSymbol::Alpha) const;

  /// H^s inner product Re sum_k w(xi_k) conj(F_k) G_k h / M.
  double sobolev_inner(const PaddedSpectrum& other, double s, double alpha,
                       SobolevSymbol symbol = SobolevSymbol::Alpha) const;

  /// Inverse transform, keeping the first field_size() samples.
  std::vector<double> inverse() const;

 private:
  std::size_t n_;
  std::size_t m_;
  double h_;
  std::vector<std::complex<double>> coeffs_;
};

/// ||g||_{H^s} of grid samples with spacing h.
double spectral_sobolev_norm(std::span<const double> values, double spacing, double s, double alpha,
                             SobolevSymbol symbol = SobolevSymbol::Alpha);

/// Zeroes every padded mode with |xi| > (2/3) pi / h, in place.
void dealias_two_thirds(std::span<double> values, double spacing);

}  // namespace beq
