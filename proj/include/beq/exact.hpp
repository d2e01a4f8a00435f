// include/beq/exact.hpp
//
// The explicit self-similar blowup solution u0(t,x) = -(x/(T-t) + c0)/(b+1),
// wave-breaking diagnostics, and a finite-difference residual oracle that
// evaluates the full PDE on any sampled candidate solution.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "beq/errors.hpp"
#include "beq/model.hpp"

namespace beq {

/// u0(t,x); throws BlowupDomainError for t >= T.
template <typename Real>
Real eval_u0(const ModelParams& params, Real t, Real x) {
  const Real remaining = static_cast<Real>(params.T) - t;
  if (!(remaining > Real(0))) throw BlowupDomainError("u0 is only defined for t < T");
  return -(x / remaining + static_cast<Real>(params.c0)) / static_cast<Real>(params.b_plus_one());
}

/// d/dx u0 at x = 0, i.e. -1/((b+1)(T-t)).
double slope_at_origin(const ModelParams& params, double t);

/// The slope diverges in magnitude as t -> T-. Sign is reported separately
/// because the profile's slope is negative whenever b > -1.
struct BreakingDiagnostic {
  double t = 0.0;
  double slope = 0.0;
  double magnitude = 0.0;
  int sign = 0;
  double scaled_slope = 0.0;  ///< slope * (T - t), constant in t
};

BreakingDiagnostic breaking_diagnostic(const ModelParams& params, double t);

/// A scalar field sampled on a uniform (t, x) lattice; row n holds time
/// t0 + n dt. Extended precision keeps the 1/h^3 rounding of the
/// third-derivative stencil below the truncation error being measured.
struct SpaceTimeSamples {
  long double t0 = 0, dt = 0, x0 = 0, h = 0;
  std::size_t nt = 0, nx = 0;
  std::vector<long double> values;  ///< row-major, nt * nx

  long double at(std::size_t n, std::size_t j) const { return values[n * nx + j]; }
};

using SpaceTimeFunction = std::function<long double(long double t, long double x)>;

struct SpaceTimeWindow {
  double t_lo = 0.0, t_hi = 0.5;
  double x_lo = -5.0, x_hi = 5.0;
};

/// Samples f on the lattice covering the window with spacings (h, dt).
SpaceTimeSamples sample_space_time(const SpaceTimeFunction& f, const SpaceTimeWindow& window,
                                   double h, double dt);

/// Max over interior stencil points of the PDE residual evaluated with
/// second-order centred differences (five-point third derivative).
/// Throws InputError when fewer than 3 time rows or 5 columns are present.
double max_abs_residual(const ModelParams& params, const SpaceTimeSamples& samples);

struct ResidualReport {
  double grid_spacing = 0.0;  ///< finest h
  double time_step = 0.0;     ///< finest dt
  double max_abs_residual = 0.0;
  double convergence_order = 0.0;  ///< least-squares slope of log r vs log h
  std::vector<double> level_spacing;
  std::vector<double> level_residual;
};

/// Evaluates the residual of `candidate` at `levels` successive halvings
/// ending at (h, dt) and fits the observed order. Samples are generated row by
/// row so fine lattices never need to be held in memory.
ResidualReport residual_oracle(const ModelParams& params, const SpaceTimeFunction& candidate,
                               const SpaceTimeWindow& window, double h, double dt,
                               int levels = 3);

/// Convenience sampler of u0 in extended precision.
SpaceTimeFunction exact_solution_sampler(const ModelParams& params);

}  // namespace beq
