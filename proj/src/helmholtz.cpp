// src/helmholtz.cpp

#include "beq/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "beq/errors.hpp"

namespace beq {

HelmholtzOps::HelmholtzOps(double alpha, Grid grid, double boundary_tolerance)
    : alpha_(alpha), grid_(grid), boundary_tolerance_(boundary_tolerance) {
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InputError("Helmholtz operator needs alpha != 0");
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  r_ = alpha * alpha / (h * h);

  kernel_.resize(n);
  for (std::size_t k = 0; k < n; ++k) kernel_[k] = kernel_value(alpha, static_cast<double>(k) * h);

  // Constant-coefficient tridiagonal: diag 1 + 2r, off-diagonals -r.
  const double diag = 1.0 + 2.0 * r_;
  const double off = -r_;
  sweep_upper_.resize(n);
  sweep_inv_.resize(n);
  double upper_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = diag - off * upper_prev;
    sweep_inv_[i] = 1.0 / pivot;
    sweep_upper_[i] = off / pivot;
    upper_prev = sweep_upper_[i];
  }
}

double HelmholtzOps::kernel_value(double alpha, double x) {
  const double a = std::abs(alpha);
  return std::exp(-std::abs(x) / a) / (2.0 * a);
}

double HelmholtzOps::kernel_integral() const {
  const std::size_t n = grid_.size();
  double sum = 0.5 * (kernel_value(alpha_, grid_.node(0)) + kernel_value(alpha_, grid_.node(n - 1)));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += kernel_value(alpha_, grid_.node(i));
  return grid_.spacing() * sum;
}

void HelmholtzOps::forward_into(std::span<const double> in, std::span<double> out) const {
  const std::size_t n = in.size();
  const double r = r_;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? in[i - 1] : 0.0;
    const double right = i + 1 < n ? in[i + 1] : 0.0;
    out[i] = in[i] - r * (right - 2.0 * in[i] + left);
  }
}

void HelmholtzOps::solve_into(std::span<const double> in, std::span<double> out) const {
  const std::size_t n = in.size();
  const double off = -r_;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prev = (in[i] - off * prev) * sweep_inv_[i];
    out[i] = prev;
  }
  for (std::size_t i = n - 1; i-- > 0;) out[i] -= sweep_upper_[i] * out[i + 1];
}

Field HelmholtzOps::apply_forward(const Field& g) const {
  require_same_grid(g.grid(), grid_, "apply_forward");
  std::vector<double> out(g.size());
  forward_into(g.values(), out);
  return Field(grid_, std::move(out));
}

Field HelmholtzOps::apply_inverse(const Field& w) const {
  require_same_grid(w.grid(), grid_, "apply_inverse");
  require_decay(w.values(), "apply_inverse");
  std::vector<double> out(w.size());
  solve_into(w.values(), out);
  return Field(grid_, std::move(out));
}

Field HelmholtzOps::convolve_kernel(const Field& w) const {
  require_same_grid(w.grid(), grid_, "convolve_kernel");
  require_decay(w.values(), "convolve_kernel");
  const std::size_t n = w.size();
  const double h = grid_.spacing();
  std::vector<double> weighted(w.values().begin(), w.values().end());
  weighted.front() *= 0.5;
  weighted.back() *= 0.5;
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += kernel_[i > j ? i - j : j - i] * weighted[j];
    out[i] = h * sum;
  }
  return Field(grid_, std::move(out));
}

double HelmholtzOps::sobolev_norm(const Field& g, double s, SobolevSymbol symbol) const {
  require_same_grid(g.grid(), grid_, "sobolev_norm");
  if (s < 0.0) throw InputError("sobolev_norm needs s >= 0");
  require_decay(g.values(), "sobolev_norm");
  return spectral_sobolev_norm(g.values(), grid_.spacing(), s, alpha_, symbol);
}

std::size_t HelmholtzOps::boundary_band() const { return std::max<std::size_t>(4, grid_.size() / 64); }

namespace {

struct EdgeMagnitudes {
  double edge = 0.0;
  double interior = 0.0;
};

EdgeMagnitudes edge_magnitudes(std::span<const double> v, std::size_t band) {
  EdgeMagnitudes m;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(v[i]);
    m.interior = std::max(m.interior, a);
    if (i < band || i + band >= n) m.edge = std::max(m.edge, a);
  }
  return m;
}

}  // namespace

bool HelmholtzOps::decays(std::span<const double> values) const {
  const EdgeMagnitudes m = edge_magnitudes(values, boundary_band());
  return m.edge <= boundary_tolerance_ * m.interior;
}

void HelmholtzOps::require_decay(std::span<const double> values, const char* what) const {
  const EdgeMagnitudes m = edge_magnitudes(values, boundary_band());
  if (m.edge <= boundary_tolerance_ * m.interior) return;
  // Exponential tails shrink by e per alpha of extra width.
  const double L = grid_.half_width();
  const double ratio = m.edge / (boundary_tolerance_ * m.interior);
  const double suggested = std::max(1.25 * L, L + std::abs(alpha_) * std::log(ratio) + 2.0 * std::abs(alpha_));
  std::ostringstream msg;
  msg << what << ": field does not decay at the grid edges (edge/max = " << m.edge / m.interior
      << ", tolerance " << boundary_tolerance_ << "); try half width L >= " << suggested;
  throw DomainTooSmallError(msg.str(), suggested);
}

}  // namespace beq
