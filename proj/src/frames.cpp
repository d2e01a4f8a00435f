// src/frames.cpp

#include "beq/frames.hpp"

#include <cmath>

#include "beq/errors.hpp"
#include "beq/exact.hpp"

namespace beq {

SimilarityPoint to_similarity(double T, double t, double x) {
  const double remaining = T - t;
  if (!(remaining > 0.0)) throw BlowupDomainError("similarity coordinates need t < T");
  return {-std::log(remaining), x / remaining};
}

PhysicalPoint from_similarity(double T, const SimilarityPoint& p) {
  const double remaining = std::exp(-p.tau);
  return {T - remaining, p.rho * remaining};
}

RescaledPoint to_rescaled(const SimilarityPoint& p) { return {p.tau, std::exp(-p.tau) * p.rho}; }

double initial_similarity_time(double T) {
  if (!(T > 0.0)) throw InputError("T must be positive");
  return -std::log(T);
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::U: return "u";
    case Role::V: return "v";
    case Role::VBar: return "vbar";
    case Role::W: return "w";
  }
  return "unknown";
}

Field resample_cubic(const Field& source, const Grid& target, std::size_t* outside) {
  const Grid& g = source.grid();
  const std::size_t n = g.size();
  const double x0 = g.node(0);
  const double xn = g.node(n - 1);
  const double h = g.spacing();
  auto value = [&](std::ptrdiff_t i) {
    return (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : source[static_cast<std::size_t>(i)];
  };
  std::size_t missed = 0;
  std::vector<double> out(target.size(), 0.0);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double y = target.node(j);
    if (y < x0 || y > xn) {
      ++missed;
      continue;
    }
    const double q = (y - x0) / h;
    auto i = static_cast<std::ptrdiff_t>(std::floor(q));
    i = std::min<std::ptrdiff_t>(std::max<std::ptrdiff_t>(i, 0), static_cast<std::ptrdiff_t>(n) - 2);
    const double t = q - static_cast<double>(i);
    const double wm = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
    out[j] = wm * value(i - 1) + w0 * value(i) + w1 * value(i + 1) + w2 * value(i + 2);
  }
  if (outside) *outside = missed;
  return Field(target, std::move(out));
}

Perturbation perturbation_from_physical(const ModelParams& params, const Field& u, double t,
                                        const Grid* rho_grid) {
  params.validate();
  const double remaining = params.T - t;
  if (!(remaining > 0.0)) throw BlowupDomainError("perturbation_from_physical needs t < T");
  const Grid& xg = u.grid();
  std::vector<double> pert(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) pert[i] = u[i] - eval_u0(params, t, xg.node(i));
  const double tau = -std::log(remaining);

  Perturbation result{{Role::V, Field(xg.scaled(1.0 / remaining), pert), tau}, {}};
  if (rho_grid == nullptr) return result;

  std::size_t outside = 0;
  const Field on_x = resample_cubic(Field(xg, std::move(pert)), rho_grid->scaled(remaining), &outside);
  result.v.samples = Field(*rho_grid, on_x.vector());
  if (outside > 0) {
    result.warnings.push_back(std::to_string(outside) +
                              " similarity nodes map outside the physical domain; perturbation "
                              "zero-extended there");
  }
  return result;
}

Field physical_from_perturbation(const ModelParams& params, const FieldRole& v) {
  if (v.role != Role::V) throw InputError("physical_from_perturbation expects a v field");
  const double remaining = std::exp(-v.tau);
  const double t = params.T - remaining;
  const Grid xg = v.samples.grid().scaled(remaining);
  std::vector<double> u(v.samples.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = v.samples[i] + eval_u0(params, t, xg.node(i));
  return Field(xg, std::move(u));
}

FieldRole vbar_from_v(const FieldRole& v) {
  if (v.role != Role::V) throw InputError("vbar_from_v expects a v field");
  const double shrink = std::exp(-v.tau);
  std::vector<double> values(v.samples.values().begin(), v.samples.values().end());
  for (double& x : values) x *= shrink;
  return {Role::VBar, Field(v.samples.grid().scaled(shrink), std::move(values)), v.tau};
}

FieldRole v_from_vbar(const FieldRole& vbar) {
  if (vbar.role != Role::VBar) throw InputError("v_from_vbar expects a vbar field");
  const double stretch = std::exp(vbar.tau);
  std::vector<double> values(vbar.samples.values().begin(), vbar.samples.values().end());
  for (double& x : values) x *= stretch;
  return {Role::V, Field(vbar.samples.grid().scaled(stretch), std::move(values)), vbar.tau};
}

FieldRole w_from_vbar(const HelmholtzOps& ops, const FieldRole& vbar) {
  if (vbar.role != Role::VBar) throw InputError("w_from_vbar expects a vbar field");
  return {Role::W, ops.apply_forward(vbar.samples), vbar.tau};
}

FieldRole vbar_from_w(const HelmholtzOps& ops, const FieldRole& w) {
  if (w.role != Role::W) throw InputError("vbar_from_w expects a w field");
  return {Role::VBar, ops.apply_inverse(w.samples), w.tau};
}

FieldRole build_initial_w(const ModelParams& params, const Field& u_initial) {
  params.validate();
  const Grid& g = u_initial.grid();
  std::vector<double> pert(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) pert[i] = u_initial[i] - eval_u0(params, 0.0, g.node(i));
  return initial_w_from_perturbation(params, Field(g, std::move(pert)));
}

FieldRole initial_w_from_perturbation(const ModelParams& params, const Field& pert) {
  params.validate();
  const Grid& g = pert.grid();
  std::vector<double> w(g.size());
  if (params.alpha == 0.0) {
    w = pert.vector();
  } else {
    if (g.spacing() > std::abs(params.alpha)) {
      throw InputError("grid too coarse: spacing exceeds alpha, second derivative unresolved");
    }
    HelmholtzOps(params.alpha, g).forward_into(pert.values(), w);
  }
  for (double& x : w) x *= params.T;
  return {Role::W, Field(g, std::move(w)), initial_similarity_time(params.T)};
}

Reconstruction reconstruct_physical(const ModelParams& params, const HelmholtzOps& ops, const FieldRole& w) {
  FieldRole vbar = vbar_from_w(ops, w);
  FieldRole v = v_from_vbar(vbar);
  const double stretch = std::exp(w.tau);
  std::vector<double> phys(vbar.samples.values().begin(), vbar.samples.values().end());
  for (double& x : phys) x *= stretch;
  Field physical(vbar.samples.grid(), std::move(phys));
  return {w.tau, params.T - std::exp(-w.tau), std::move(vbar.samples), std::move(v.samples),
          std::move(physical)};
}

double rho_frame_norm(const Field& vbar, double tau, double s, double alpha) {
  const double base = spectral_sobolev_norm(vbar.values(), vbar.grid().spacing(), s, alpha * std::exp(-tau));
  return std::exp(1.5 * tau) * base;
}

}  // namespace beq
