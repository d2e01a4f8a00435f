// src/dynamics.cpp

#include "beq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "beq/errors.hpp"
#include "beq/spectral.hpp"

namespace beq {

TransportScheme parse_transport_scheme(std::string_view name) {
  if (name == "upwind") return TransportScheme::Upwind;
  if (name == "weno3") return TransportScheme::Weno3;
  throw InputError("unknown transport scheme '" + std::string(name) + "'");
}

std::string_view transport_scheme_name(TransportScheme scheme) {
  return scheme == TransportScheme::Upwind ? "upwind" : "weno3";
}

Field RhsBreakdown::total() const {
  std::vector<double> v(linear_part.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = linear_part[i] + nonlinear_part[i];
  return Field(linear_part.grid(), std::move(v));
}

void centered_derivative(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  const double inv = 1.0 / (2.0 * h);
  out[0] = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv;
}

namespace {

// Jiang-Peng third-order WENO derivative from the left-biased stencil
// built on the forward differences d1 = D+f_{i-2}, d2 = D+f_{i-1}, d3 = D+f_i.
double weno3(double d1, double d2, double d3) {
  constexpr double eps = 1e-12;
  const double r = (eps + (d2 - d1) * (d2 - d1)) / (eps + (d3 - d2) * (d3 - d2));
  const double omega = 1.0 / (1.0 + 2.0 * r * r);
  return 0.5 * (d2 + d3) - 0.5 * omega * (d1 - 2.0 * d2 + d3);
}

}  // namespace

void upwind_derivative(std::span<const double> f, std::span<const double> coef, double h,
                       TransportScheme scheme, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  auto at = [&](std::ptrdiff_t i) { return (i < 0 || i >= n) ? 0.0 : f[static_cast<std::size_t>(i)]; };
  auto fwd = [&](std::ptrdiff_t i) { return (at(i + 1) - at(i)) / h; };
  out[0] = 0.0;
  out[static_cast<std::size_t>(n - 1)] = 0.0;
  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
    const double a = coef[static_cast<std::size_t>(i)];
    double d = 0.0;
    if (scheme == TransportScheme::Upwind) {
      if (a > 0.0) d = fwd(i);
      else if (a < 0.0) d = fwd(i - 1);
    } else {
      // Right-biased derivative is the mirror image of the left-biased one.
      if (a > 0.0) d = weno3(fwd(i + 1), fwd(i), fwd(i - 1));
      else if (a < 0.0) d = weno3(fwd(i - 2), fwd(i - 1), fwd(i));
    }
    out[static_cast<std::size_t>(i)] = d;
  }
}

Dynamics::Dynamics(ModelParams params, Grid grid, DynamicsOptions options)
    : params_(params),
      grid_(grid),
      options_(options),
      ops_((params.validate(), params.alpha == 0.0
                                   ? throw InputError("dynamics needs alpha != 0 (gamma/alpha^2 term)")
                                   : params.alpha),
           grid, options.boundary_tolerance),
      nodes_(grid.nodes()) {
  if (!(options_.cfl_number > 0.0) || options_.cfl_number > 1.0) {
    throw InputError("cfl_number must lie in (0, 1]");
  }
  if (!(options_.dt_max > 0.0)) throw InputError("dt_max must be positive");
  const double B = params_.b_plus_one();
  damping_ = 1.0 - params_.c1 / B;
  slope_w_ = params_.c2 / B;
  slope_pw_ = (params_.c2 - B) / B;
  offset_scale_ = params_.gamma / (params_.alpha * params_.alpha) + params_.c0 * params_.c2 / B;
}

SimState Dynamics::initial_state(const FieldRole& w0) const {
  if (w0.role != Role::W) throw InputError("initial_state expects a w field");
  SimState s{w0.samples, w0.tau, params_, 0, 0.0};
  validate_state(s);
  return s;
}

std::vector<double> Dynamics::transport_coefficient_w(double tau) const {
  const double d = std::exp(-tau) * offset_scale_;
  std::vector<double> c(nodes_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = d + slope_w_ * nodes_[i];
  return c;
}

std::vector<double> Dynamics::transport_coefficient_pw(double tau) const {
  const double d = std::exp(-tau) * offset_scale_;
  std::vector<double> c(nodes_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = d + slope_pw_ * nodes_[i];
  return c;
}

void Dynamics::linear_into(std::span<const double> w, std::span<const double> pw, double tau,
                           std::span<double> out) const {
  const std::size_t n = w.size();
  const double h = grid_.spacing();
  const std::vector<double> cw = transport_coefficient_w(tau);
  const std::vector<double> cpw = transport_coefficient_pw(tau);
  std::vector<double> dw(n), dpw(n);
  upwind_derivative(w, cw, h, options_.scheme, dw);
  centered_derivative(pw, h, dpw);
  out[0] = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = -damping_ * w[i] + cw[i] * dw[i] + damping_ * pw[i] - cpw[i] * dpw[i];
  }
}

void Dynamics::nonlinear_into(std::span<const double> w, std::span<const double> pw,
                              std::span<double> out) const {
  const std::size_t n = w.size();
  const double h = grid_.spacing();
  const double B = params_.b_plus_one();
  const double mix = params_.c1 + params_.c2 - B;
  std::vector<double> dw(n), dpw(n);
  centered_derivative(w, h, dw);
  centered_derivative(pw, h, dpw);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (mix * pw[i] - params_.c1 * w[i]) * dpw[i] - params_.c2 * dw[i] * pw[i];
  }
  if (options_.dealias) dealias_two_thirds(out, h);
  out[0] = 0.0;
  out[n - 1] = 0.0;
}

void Dynamics::rhs_into(std::span<const double> w, double tau, std::span<double> out) const {
  const std::size_t n = w.size();
  std::vector<double> pw(n), lin(n), non(n);
  ops_.solve_into(w, pw);
  linear_into(w, pw, tau, lin);
  nonlinear_into(w, pw, non);
  for (std::size_t i = 0; i < n; ++i) out[i] = lin[i] + non[i];
}

void Dynamics::validate_state(const SimState& state) const {
  require_same_grid(state.w.grid(), grid_, "dynamics state");
  if (!(state.params == params_)) throw InputError("state parameters differ from the dynamics parameters");
  ops_.require_decay(state.w.values(), "dynamics state");
}

Field Dynamics::linear_rhs(const SimState& state) const {
  validate_state(state);
  std::vector<double> pw(state.w.size()), out(state.w.size());
  ops_.solve_into(state.w.values(), pw);
  linear_into(state.w.values(), pw, state.tau, out);
  return Field(grid_, std::move(out));
}

Field Dynamics::nonlinear_rhs(const SimState& state) const {
  validate_state(state);
  std::vector<double> pw(state.w.size()), out(state.w.size());
  ops_.solve_into(state.w.values(), pw);
  nonlinear_into(state.w.values(), pw, out);
  return Field(grid_, std::move(out));
}

RhsBreakdown Dynamics::breakdown(const SimState& state) const {
  return {linear_rhs(state), nonlinear_rhs(state), Field(grid_, transport_coefficient_w(state.tau)),
          Field(grid_, transport_coefficient_pw(state.tau))};
}

Field Dynamics::full_rhs(const SimState& state) const {
  validate_state(state);
  const std::size_t n = state.w.size();
  const double h = grid_.spacing();
  const ModelParams& p = params_;
  const double B = p.b_plus_one();
  const double a2 = p.alpha * p.alpha;
  const double e = std::exp(-state.tau);
  const double et = std::exp(state.tau);
  const auto w = state.w.values();

  std::vector<double> pw(n);
  ops_.solve_into(w, pw);

  std::vector<double> coef_w(n), coef_pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho0 = grid_.node(i);
    coef_w[i] = e * (p.gamma / a2 + p.c2 * (p.c0 + et * rho0) / B);
    coef_pw[i] = e * (p.gamma / a2 + (p.c0 * p.c2 + (p.c2 - B) * et * rho0) / B);
  }
  std::vector<double> dw_up(n), dw(n), dpw(n);
  upwind_derivative(w, coef_w, h, options_.scheme, dw_up);
  centered_derivative(w, h, dw);
  centered_derivative(pw, h, dpw);

  std::vector<double> rhs(n), quad(n);
  for (std::size_t i = 0; i < n; ++i) {
    quad[i] = -p.c2 * dw[i] * pw[i] + ((p.c1 + p.c2 - B) * pw[i] - p.c1 * w[i]) * dpw[i];
  }
  if (options_.dealias) dealias_two_thirds(quad, h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs[i] = -(1.0 - p.c1 / B) * w[i] + coef_w[i] * dw_up[i] + (1.0 - p.c1 / B) * pw[i] -
             coef_pw[i] * dpw[i] + quad[i];
  }
  return Field(grid_, std::move(rhs));
}

double Dynamics::cfl_limit(const SimState& state) const {
  const std::vector<double> cw = transport_coefficient_w(state.tau);
  double vmax = 0.0;
  for (double c : cw) vmax = std::max(vmax, std::abs(c));
  std::vector<double> pw(state.w.size());
  ops_.solve_into(state.w.values(), pw);
  double pmax = 0.0;
  for (double v : pw) pmax = std::max(pmax, std::abs(v));
  vmax += std::abs(params_.c2) * pmax;
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return options_.cfl_number * grid_.spacing() / vmax;
}

double Dynamics::admissible_dt(const SimState& state) const {
  return std::min(options_.dt_max, cfl_limit(state));
}

SimState Dynamics::step(const SimState& state, double dt) const {
  validate_state(state);
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  if (dt > options_.dt_max * (1.0 + 1e-12)) throw InputError("time step exceeds dt_max");
  const double limit = cfl_limit(state);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the CFL limit " << limit;
    throw CflError(msg.str(), limit);
  }

  const std::size_t n = state.w.size();
  const auto w = state.w.values();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs_into(w, state.tau, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * dt * k1[i];
  rhs_into(tmp, state.tau + 0.5 * dt, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * dt * k2[i];
  rhs_into(tmp, state.tau + 0.5 * dt, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + dt * k3[i];
  rhs_into(tmp, state.tau + dt, k4);

  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = w[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(next[i])) {
      throw NumericalAbort("non-finite value at node " + std::to_string(i) + " in step " +
                           std::to_string(state.step_count + 1));
    }
  }
  next[0] = 0.0;
  next[n - 1] = 0.0;
  ops_.require_decay(next, "time step");
  return SimState{Field(grid_, std::move(next)), state.tau + dt, params_, state.step_count + 1, dt};
}

DissipativityReport Dynamics::dissipativity_report(const SimState& state, double s) const {
  if (!(s > 2.0)) throw InputError("dissipativity report needs s > 2");
  const Field lw = linear_rhs(state);
  const double h = grid_.spacing();
  const PaddedSpectrum ws(state.w.values(), h);
  const PaddedSpectrum ls(lw.values(), h);
  const RegimeReport regime = classify(params_);

  DissipativityReport r;
  r.tau = state.tau;
  r.s = s;
  r.quad_form = ls.sobolev_inner(ws, s, params_.alpha);
  r.hs_norm_sq = ws.sobolev_norm_squared(s, params_.alpha);
  r.hs1_norm_sq = ws.sobolev_norm_squared(s - 1.0, params_.alpha);
  r.predicted = -regime.ratio_a * r.hs_norm_sq - regime.ratio_b * r.hs1_norm_sq;
  r.relative_gap = std::abs(r.quad_form - r.predicted) /
                   std::max(std::abs(r.predicted), std::numeric_limits<double>::min());
  return r;
}

double Dynamics::nonlinear_bound_ratio(const SimState& state, double s) const {
  const Field f = nonlinear_rhs(state);
  const double h = grid_.spacing();
  const double wn = spectral_sobolev_norm(state.w.values(), h, s, params_.alpha);
  if (wn == 0.0) return 0.0;
  return spectral_sobolev_norm(f.values(), h, s, params_.alpha) / (wn * wn);
}

}  // namespace beq
