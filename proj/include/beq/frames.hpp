// include/beq/frames.hpp
//
// Coordinate frames and field roles.
//
//   physical      (t, x)
//   similarity    tau = -log(T - t),  rho  = x / (T - t)
//   rescaled      tau,                rho0 = exp(-tau) rho  (= x)
//
// Field roles at fixed tau:
//   u     physical solution                 u = u0 + v
//   v     similarity perturbation           v(tau, rho)
//   vbar  exp(-tau) v, in the rho0 frame    vbar(tau, rho0)
//   w     Helmholtz image                   w = vbar - a^2 vbar''
//
// Grids are carried along with every conversion: a v field on nodes rho_i
// corresponds to a vbar field on nodes exp(-tau) rho_i with no resampling.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "beq/grid.hpp"
#include "beq/helmholtz.hpp"
#include "beq/model.hpp"

namespace beq {

struct SimilarityPoint {
  double tau = 0.0;
  double rho = 0.0;
};

struct PhysicalPoint {
  double t = 0.0;
  double x = 0.0;
};

struct RescaledPoint {
  double tau = 0.0;
  double rho0 = 0.0;
};

/// Throws BlowupDomainError for t >= T.
SimilarityPoint to_similarity(double T, double t, double x);
PhysicalPoint from_similarity(double T, const SimilarityPoint& p);
RescaledPoint to_rescaled(const SimilarityPoint& p);

/// Similarity time of physical time zero.
double initial_similarity_time(double T);

enum class Role { U, V, VBar, W };

std::string_view role_name(Role role);

struct FieldRole {
  Role role;
  Field samples;
  double tau;
};

/// Four-point cubic Lagrange interpolation of `source` onto `target`, with
/// zeros beyond the source grid. `outside` (optional) counts target nodes
/// that fell outside the source domain.
Field resample_cubic(const Field& source, const Grid& target, std::size_t* outside = nullptr);

struct Perturbation {
  FieldRole v;
  std::vector<std::string> warnings;
};

/// v(tau, rho) = u(t, x) - u0(t, x) for u sampled on a physical grid at time
/// t. When `rho_grid` is omitted the similarity grid is the physical grid
/// stretched by 1/(T-t), so no interpolation is needed; otherwise the
/// perturbation is resampled and nodes falling outside the physical domain
/// are reported in `warnings`.
Perturbation perturbation_from_physical(const ModelParams& params, const Field& u, double t,
                                        const Grid* rho_grid = nullptr);

/// Physical field u at t = T - exp(-tau) from a v field (inverse of the above
/// on the stretched grid).
Field physical_from_perturbation(const ModelParams& params, const FieldRole& v);

/// Role changes at fixed tau. vbar <-> w go through the Helmholtz operator.
FieldRole vbar_from_v(const FieldRole& v);
FieldRole v_from_vbar(const FieldRole& vbar);
FieldRole w_from_vbar(const HelmholtzOps& ops, const FieldRole& vbar);
FieldRole vbar_from_w(const HelmholtzOps& ops, const FieldRole& w);

/// Initial Helmholtz image from the physical datum u(0, x):
///   w0 = T * Lambda^2 (u(0,.) - u0(0,.))
/// at tau0 = -log T. For T = 1 this is u - a^2 u'' + (x/T + c0)/(b+1).
/// Throws InputError when h > |alpha| (second difference unresolved).
FieldRole build_initial_w(const ModelParams& params, const Field& u_initial);

/// Same, from the perturbation g = u(0,.) - u0(0,.) itself. Avoids the
/// cancellation of subtracting the (large) affine profile.
FieldRole initial_w_from_perturbation(const ModelParams& params, const Field& g);

struct Reconstruction {
  double tau = 0.0;
  double t = 0.0;               ///< T - exp(-tau)
  Field vbar;                   ///< p * w on the rho0 grid
  Field v;                      ///< exp(tau) vbar on the stretched rho grid
  Field physical_perturbation;  ///< u - u0 at time t on the x (= rho0) grid
};

Reconstruction reconstruct_physical(const ModelParams& params, const HelmholtzOps& ops, const FieldRole& w);

/// ||v||_{H^s} in the rho frame computed from vbar on the rho0 grid:
/// exp(3 tau / 2) times the vbar norm with the symbol length scaled by exp(-tau).
double rho_frame_norm(const Field& vbar, double tau, double s, double alpha);

}  // namespace beq
