// include/beq/dynamics.hpp
//
// Method-of-lines evolution of the Helmholtz image w(tau, rho0) of a
// perturbation of the self-similar solution:
//
//   w_tau = L[w] + f(w)
//
//   L[w] = -A w + (d + a rho0) w' + A (p*w) - (d + c rho0) (p*w)'
//   f(w) = ((c1 + c2 - b - 1)(p*w) - c1 w)(p*w)' - c2 w' (p*w)
//
// with B = b+1, A = 1 - c1/B, a = c2/B, c = (c2 - B)/B and
// d(tau) = exp(-tau) (gamma/alpha^2 + c0 c2/B).
//
// The transport term on w is upwinded by the sign of its coefficient (first
// order, or WENO3 on request); derivatives of the smooth p*w and inside f are
// centred. f is passed through the 2/3-rule filter. Time stepping is
// classical RK4 under a transport CFL limit.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "beq/frames.hpp"
#include "beq/grid.hpp"
#include "beq/helmholtz.hpp"
#include "beq/model.hpp"

namespace beq {

enum class TransportScheme { Upwind, Weno3 };

TransportScheme parse_transport_scheme(std::string_view name);
std::string_view transport_scheme_name(TransportScheme scheme);

struct DynamicsOptions {
  TransportScheme scheme = TransportScheme::Upwind;
  bool dealias = true;
  double boundary_tolerance = 1e-6;
  double cfl_number = 0.5;  ///< dt <= cfl_number * h / max|transport coefficient|
  double dt_max = 0.05;
};

struct SimState {
  Field w;
  double tau = 0.0;
  ModelParams params;
  std::size_t step_count = 0;
  double last_dt = 0.0;
};

struct RhsBreakdown {
  Field linear_part;
  Field nonlinear_part;
  Field transport_coefficient_w;
  Field transport_coefficient_pw;

  Field total() const;
};

struct DissipativityReport {
  double quad_form = 0.0;  ///< (Lambda^s L[w], Lambda^s w)
  double predicted = 0.0;  ///< -ratio_a ||w||_s^2 - ratio_b ||w||_{s-1}^2
  double relative_gap = 0.0;
  double tau = 0.0;
  double s = 0.0;
  double hs_norm_sq = 0.0;
  double hs1_norm_sq = 0.0;
};

/// One-sided derivative of `f` biased against the transport direction of
/// f_tau = coef f_x (forward difference where coef > 0). Zero outside the
/// array; end entries of `out` are zero.
void upwind_derivative(std::span<const double> f, std::span<const double> coef, double h,
                       TransportScheme scheme, std::span<double> out);

/// (f_{i+1} - f_{i-1}) / 2h at interior nodes, zero at the ends.
void centered_derivative(std::span<const double> f, double h, std::span<double> out);

class Dynamics {
 public:
  /// Throws InputError for alpha = 0 (the gamma/alpha^2 coefficient) or
  /// invalid parameters.
  Dynamics(ModelParams params, Grid grid, DynamicsOptions options = {});

  const ModelParams& params() const { return params_; }
  const Grid& grid() const { return grid_; }
  const HelmholtzOps& ops() const { return ops_; }
  const DynamicsOptions& options() const { return options_; }

  SimState initial_state(const FieldRole& w0) const;

  /// d(tau) + a rho0 and d(tau) + c rho0 at every node.
  std::vector<double> transport_coefficient_w(double tau) const;
  std::vector<double> transport_coefficient_pw(double tau) const;

  Field linear_rhs(const SimState& state) const;
  Field nonlinear_rhs(const SimState& state) const;
  RhsBreakdown breakdown(const SimState& state) const;
  /// The right-hand side assembled directly from the unsimplified nonlocal
  /// equation, as an independent check of linear_rhs + nonlinear_rhs.
  Field full_rhs(const SimState& state) const;

  /// Largest admissible step at the state's tau.
  double cfl_limit(const SimState& state) const;
  /// min(dt_max, cfl_limit).
  double admissible_dt(const SimState& state) const;

  /// One RK4 step. Throws CflError above the limit, NumericalAbort on
  /// non-finite values (the input state is untouched and remains the last
  /// good state), DomainTooSmallError when w reaches the grid edges.
  SimState step(const SimState& state, double dt) const;

  DissipativityReport dissipativity_report(const SimState& state, double s) const;

  /// ||f(w)||_{H^s} / ||w||_{H^s}^2.
  double nonlinear_bound_ratio(const SimState& state, double s) const;

  /// Throws if the state's grid/params differ or w does not decay.
  void validate_state(const SimState& state) const;

 private:
  void linear_into(std::span<const double> w, std::span<const double> pw, double tau,
                   std::span<double> out) const;
  void nonlinear_into(std::span<const double> w, std::span<const double> pw, std::span<double> out) const;
  void rhs_into(std::span<const double> w, double tau, std::span<double> out) const;

  ModelParams params_;
  Grid grid_;
  DynamicsOptions options_;
  HelmholtzOps ops_;
  std::vector<double> nodes_;
  double damping_;       // A
  double slope_w_;       // a
  double slope_pw_;      // c
  double offset_scale_;  // gamma/alpha^2 + c0 c2 / B
};

}  // namespace beq
