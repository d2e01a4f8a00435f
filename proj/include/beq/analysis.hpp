// include/beq/analysis.hpp
//
// Energy ledger of a run and the rate verdicts built on it.
//
// Each row stores ||w||_{H^s}, ||w||_{H^{s-1}}, a discrete derivative of
// ||w||_{H^s}^2 in tau and the defect
//
//   defect = d/dtau ||w||_s^2 + ratio_a ||w||_s^2 + ratio_b ||w||_{s-1}^2
//
// which should stay below K ||w||_s^3 for a run-wide constant K in the
// stable regime. The frame norm column is ||v||_{H^s} in the rho frame,
// reconstructed from p*w.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "beq/dynamics.hpp"
#include "beq/helmholtz.hpp"
#include "beq/model.hpp"

namespace beq {

struct LedgerRow {
  double tau = 0.0;
  double dt = 0.0;
  double hs_norm = 0.0;
  double hs1_norm = 0.0;
  double energy_derivative = 0.0;
  double defect = 0.0;
  std::optional<double> cubic_constant;  ///< defect / hs_norm^3, absent when hs_norm = 0
  double frame_norm = 0.0;
};

struct RateWindow {
  double tau_lo = 0.5;
  double tau_hi = 4.0;
};

struct RateVerdict {
  double fitted_rate = 0.0;
  double theoretical_rate = 0.0;
  Regime regime = Regime::Unclassified;
  bool pass = false;
  bool checked = false;  ///< false when the regime has no pass rule or the fit was impossible
  RateWindow window;
  std::size_t samples = 0;
  std::string note;
};

class EnergyLedger {
 public:
  EnergyLedger(ModelParams params, Grid grid, double s);

  const ModelParams& params() const { return params_; }
  double s() const { return s_; }
  const std::vector<LedgerRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Appends a row for `state`. Throws InputError for a mismatched grid or
  /// parameters and for tau not strictly greater than the last row's.
  void record(const SimState& state);

  /// Appends a row with given norms (synthetic ledgers and replay).
  void append(double tau, double dt, double hs_norm, double hs1_norm, double frame_norm);

  /// Largest defect / hs_norm^3 over rows with hs_norm > 0, if any.
  std::optional<double> k_run() const;

  /// First row index with tau >= tau_lo whose hs_norm exceeds the previous
  /// row's by more than rel_tol (relative); nullopt when non-increasing.
  std::optional<std::size_t> first_increase_after(double tau_lo, double rel_tol = 0.0) const;

  /// Columns tau,dt,hs_norm,hs1_norm,d_energy,defect,K at 17 significant digits.
  void write_csv(std::ostream& out) const;
  /// Columns tau,frame_norm.
  void write_frame_csv(std::ostream& out) const;
  /// Whitespace separated columns for gnuplot.
  void write_plot_data(std::ostream& out) const;

 private:
  void refresh_derivatives(std::size_t from);

  ModelParams params_;
  Grid grid_;
  double s_;
  std::optional<HelmholtzOps> ops_;
  double ratio_a_;
  double ratio_b_;
  std::vector<LedgerRow> rows_;
  std::vector<double> energy_;
};

/// Least-squares slope of log(column) against tau over rows inside the window.
/// Throws FitError with fewer than 10 samples or a non-positive value.
double fit_log_slope(const std::vector<LedgerRow>& rows, RateWindow window, double LedgerRow::*column,
                     std::size_t* samples = nullptr);

/// Stable: pass iff fitted <= -0.8 ratio_a. Unstable: pass iff fitted > 0.
/// Other regimes are reported unchecked.
RateVerdict fit_rate(const EnergyLedger& ledger, RateWindow window = {});

/// Power of (T - t) = exp(-tau) in the decay of the frame norm, against
/// ratio_a + 1; pass within 20%. Not applicable outside the stable regime.
RateVerdict physical_rate_verdict(const EnergyLedger& ledger, RateWindow window = {});

/// Theoretical physical-frame exponent (3(b+1) + c2 - 2c1)/(b+1).
double physical_exponent(const ModelParams& params);

}  // namespace beq
