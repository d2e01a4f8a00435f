// include/beq/helmholtz.hpp
//
// The Helmholtz operator 1 - a^2 d^2 on a truncated line, its inverse
// (convolution with p(x) = exp(-|x/a|) / (2a)), and alpha-weighted
// Sobolev norms.
//
// Two discretizations of the inverse are kept deliberately apart:
//   apply_inverse   - tridiagonal solve, exactly consistent with apply_forward
//   convolve_kernel - trapezoidal quadrature against the sampled kernel
// They agree to O(h^2) and serve as cross-checks of each other.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "beq/grid.hpp"
#include "beq/spectral.hpp"

namespace beq {

class HelmholtzOps {
 public:
  /// `boundary_tolerance`: largest admissible |value| in the outer band of
  /// the grid, relative to the field's maximum.
  HelmholtzOps(double alpha, Grid grid, double boundary_tolerance = 1e-6);

  double alpha() const { return alpha_; }
  const Grid& grid() const { return grid_; }
  double boundary_tolerance() const { return boundary_tolerance_; }
  std::span<const double> kernel() const { return kernel_; }

  static double kernel_value(double alpha, double x);

  /// Trapezoidal integral of the sampled kernel over [-L, L].
  double kernel_integral() const;

  /// (g_i) - a^2 (g_{i+1} - 2 g_i + g_{i-1}) / h^2 with zeros beyond the ends.
  Field apply_forward(const Field& g) const;
  /// Solves (I - a^2 D2) v = w with the same zero extension.
  Field apply_inverse(const Field& w) const;
  /// h * sum_j c_j p(x_i - x_j) w_j with trapezoid end weights.
  Field convolve_kernel(const Field& w) const;
  double sobolev_norm(const Field& g, double s, SobolevSymbol symbol = SobolevSymbol::Alpha) const;

  /// Number of nodes per side inspected by the decay check.
  std::size_t boundary_band() const;
  bool decays(std::span<const double> values) const;
  /// Throws DomainTooSmallError (with a suggested half width) when the field
  /// does not decay at the grid edges.
  void require_decay(std::span<const double> values, const char* what) const;

  // Unchecked kernels on raw samples; `out` must not alias `in`.
  void forward_into(std::span<const double> in, std::span<double> out) const;
  void solve_into(std::span<const double> in, std::span<double> out) const;

 private:
  double alpha_;
  Grid grid_;
  double boundary_tolerance_;
  double r_;  // alpha^2 / h^2
  std::vector<double> kernel_;
  std::vector<double> sweep_upper_;  // Thomas-algorithm modified super-diagonal
  std::vector<double> sweep_inv_;    // reciprocal pivots
};

}  // namespace beq
