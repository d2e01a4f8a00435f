// src/exact.cpp

#include "beq/exact.hpp"

#include <cmath>
#include <limits>

#include "beq/fit.hpp"

namespace beq {

double slope_at_origin(const ModelParams& params, double t) {
  const double remaining = params.T - t;
  if (!(remaining > 0.0)) throw BlowupDomainError("slope is only defined for t < T");
  return -1.0 / (params.b_plus_one() * remaining);
}

BreakingDiagnostic breaking_diagnostic(const ModelParams& params, double t) {
  BreakingDiagnostic d;
  d.t = t;
  d.slope = slope_at_origin(params, t);
  d.magnitude = std::abs(d.slope);
  d.sign = d.slope > 0.0 ? 1 : (d.slope < 0.0 ? -1 : 0);
  d.scaled_slope = d.slope * (params.T - t);
  return d;
}

namespace {

std::size_t lattice_count(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw InputError("lattice needs hi > lo and a positive step");
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

// Residual of the PDE at interior columns of the middle row, given three
// consecutive time rows.
template <typename Row>
long double row_residual(const ModelParams& p, const Row& prev, const Row& mid, const Row& next,
                         std::size_t nx, long double h, long double dt) {
  const long double a2 = static_cast<long double>(p.alpha) * p.alpha;
  const long double bp1 = p.b_plus_one();
  const long double h2 = h * h;
  const long double h3 = h2 * h;
  long double worst = 0.0L;
  for (std::size_t j = 2; j + 2 < nx; ++j) {
    const long double u = mid[j];
    const long double ux = (mid[j + 1] - mid[j - 1]) / (2 * h);
    const long double uxx = (mid[j + 1] - 2 * mid[j] + mid[j - 1]) / h2;
    const long double uxxx = (mid[j + 2] - 2 * mid[j + 1] + 2 * mid[j - 1] - mid[j - 2]) / (2 * h3);
    const long double ut = (next[j] - prev[j]) / (2 * dt);
    const long double dxx_next = (next[j + 1] - 2 * next[j] + next[j - 1]) / h2;
    const long double dxx_prev = (prev[j + 1] - 2 * prev[j] + prev[j - 1]) / h2;
    const long double utxx = (dxx_next - dxx_prev) / (2 * dt);
    const long double r = ut - a2 * utxx + p.c0 * ux + bp1 * u * ux + p.gamma * uxxx -
                          a2 * (p.c1 * ux * uxx + p.c2 * u * uxxx);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

SpaceTimeSamples sample_space_time(const SpaceTimeFunction& f, const SpaceTimeWindow& window,
                                   double h, double dt) {
  SpaceTimeSamples s;
  s.t0 = window.t_lo;
  s.x0 = window.x_lo;
  s.h = h;
  s.dt = dt;
  s.nt = lattice_count(window.t_lo, window.t_hi, dt);
  s.nx = lattice_count(window.x_lo, window.x_hi, h);
  s.values.resize(s.nt * s.nx);
  for (std::size_t n = 0; n < s.nt; ++n) {
    const long double t = s.t0 + static_cast<long double>(n) * s.dt;
    for (std::size_t j = 0; j < s.nx; ++j) {
      s.values[n * s.nx + j] = f(t, s.x0 + static_cast<long double>(j) * s.h);
    }
  }
  return s;
}

double max_abs_residual(const ModelParams& params, const SpaceTimeSamples& samples) {
  if (samples.nt < 3 || samples.nx < 5) {
    throw InputError("residual stencil needs at least 3 time rows and 5 spatial columns");
  }
  if (samples.values.size() != samples.nt * samples.nx) throw InputError("sample array size mismatch");
  long double worst = 0.0L;
  for (std::size_t n = 1; n + 1 < samples.nt; ++n) {
    const long double* prev = &samples.values[(n - 1) * samples.nx];
    const long double* mid = &samples.values[n * samples.nx];
    const long double* next = &samples.values[(n + 1) * samples.nx];
    worst = std::max(worst, row_residual(params, prev, mid, next, samples.nx, samples.h, samples.dt));
  }
  return static_cast<double>(worst);
}

namespace {

double streamed_residual(const ModelParams& params, const SpaceTimeFunction& f,
                         const SpaceTimeWindow& window, double h, double dt) {
  const std::size_t nt = lattice_count(window.t_lo, window.t_hi, dt);
  const std::size_t nx = lattice_count(window.x_lo, window.x_hi, h);
  if (nt < 3 || nx < 5) {
    throw InputError("residual stencil needs at least 3 time rows and 5 spatial columns");
  }
  const long double t0 = window.t_lo, x0 = window.x_lo, hl = h, dtl = dt;
  auto fill = [&](std::vector<long double>& row, std::size_t n) {
    const long double t = t0 + static_cast<long double>(n) * dtl;
    for (std::size_t j = 0; j < nx; ++j) row[j] = f(t, x0 + static_cast<long double>(j) * hl);
  };
  std::vector<long double> prev(nx), mid(nx), next(nx);
  fill(prev, 0);
  fill(mid, 1);
  long double worst = 0.0L;
  for (std::size_t n = 1; n + 1 < nt; ++n) {
    fill(next, n + 1);
    worst = std::max(worst, row_residual(params, prev, mid, next, nx, hl, dtl));
    std::swap(prev, mid);
    std::swap(mid, next);
  }
  return static_cast<double>(worst);
}

}  // namespace

ResidualReport residual_oracle(const ModelParams& params, const SpaceTimeFunction& candidate,
                               const SpaceTimeWindow& window, double h, double dt, int levels) {
  if (levels < 1) throw InputError("residual_oracle needs at least one level");
  ResidualReport report;
  report.grid_spacing = h;
  report.time_step = dt;
  for (int k = levels - 1; k >= 0; --k) {
    const double scale = std::ldexp(1.0, k);
    report.level_spacing.push_back(h * scale);
    report.level_residual.push_back(streamed_residual(params, candidate, window, h * scale, dt * scale));
  }
  report.max_abs_residual = report.level_residual.back();
  report.convergence_order = std::numeric_limits<double>::quiet_NaN();
  if (levels >= 2) {
    bool positive = true;
    for (double r : report.level_residual) positive = positive && r > 0.0;
    if (positive) {
      std::vector<double> lx, ly;
      for (std::size_t i = 0; i < report.level_spacing.size(); ++i) {
        lx.push_back(std::log(report.level_spacing[i]));
        ly.push_back(std::log(report.level_residual[i]));
      }
      report.convergence_order = least_squares_slope(lx, ly);
    }
  }
  return report;
}

SpaceTimeFunction exact_solution_sampler(const ModelParams& params) {
  return [params](long double t, long double x) { return eval_u0<long double>(params, t, x); };
}

}  // namespace beq
