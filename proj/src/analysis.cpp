// src/analysis.cpp

#include "beq/analysis.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "beq/errors.hpp"
#include "beq/fit.hpp"
#include "beq/frames.hpp"
#include "beq/spectral.hpp"

namespace beq {

EnergyLedger::EnergyLedger(ModelParams params, Grid grid, double s)
    : params_(params), grid_(grid), s_(s) {
  params_.validate();
  if (!(s > 0.0)) throw InputError("ledger needs s > 0");
  if (params_.alpha != 0.0) ops_.emplace(params_.alpha, grid_);
  const RegimeReport r = classify(params_);
  ratio_a_ = r.ratio_a;
  ratio_b_ = r.ratio_b;
}

void EnergyLedger::record(const SimState& state) {
  require_same_grid(state.w.grid(), grid_, "ledger record");
  if (!(state.params == params_)) throw InputError("ledger record: parameters differ");
  const double h = grid_.spacing();
  const auto w = state.w.values();
  const double hs = spectral_sobolev_norm(w, h, s_, params_.alpha);
  const double hs1 = spectral_sobolev_norm(w, h, s_ - 1.0, params_.alpha);
  double frame = 0.0;
  if (ops_) {
    std::vector<double> vbar(w.size());
    ops_->solve_into(w, vbar);
    frame = rho_frame_norm(Field(grid_, std::move(vbar)), state.tau, s_, params_.alpha);
  }
  append(state.tau, state.last_dt, hs, hs1, frame);
}

void EnergyLedger::append(double tau, double dt, double hs_norm, double hs1_norm, double frame_norm) {
  if (!rows_.empty() && !(tau > rows_.back().tau)) {
    throw InputError(fmt::format("ledger tau must increase strictly ({} after {})", tau, rows_.back().tau));
  }
  if (!(hs_norm >= 0.0) || !(hs1_norm >= 0.0) || !(frame_norm >= 0.0)) {
    throw InputError("ledger norms must be finite and non-negative");
  }
  LedgerRow row;
  row.tau = tau;
  row.dt = dt;
  row.hs_norm = hs_norm;
  row.hs1_norm = hs1_norm;
  row.frame_norm = frame_norm;
  rows_.push_back(row);
  energy_.push_back(hs_norm * hs_norm);
  refresh_derivatives(rows_.size() >= 2 ? rows_.size() - 2 : 0);
}

void EnergyLedger::refresh_derivatives(std::size_t from) {
  const std::size_t n = rows_.size();
  for (std::size_t i = from; i < n; ++i) {
    double d = 0.0;
    if (n >= 3 && i > 0 && i + 1 < n) {
      // Three-point centred derivative on a non-uniform stencil.
      const double h1 = rows_[i].tau - rows_[i - 1].tau;
      const double h2 = rows_[i + 1].tau - rows_[i].tau;
      d = -h2 / (h1 * (h1 + h2)) * energy_[i - 1] + (h2 - h1) / (h1 * h2) * energy_[i] +
          h1 / (h2 * (h1 + h2)) * energy_[i + 1];
    } else if (n >= 2 && i == 0) {
      d = (energy_[1] - energy_[0]) / (rows_[1].tau - rows_[0].tau);
    } else if (n >= 2) {
      d = (energy_[i] - energy_[i - 1]) / (rows_[i].tau - rows_[i - 1].tau);
    }
    LedgerRow& row = rows_[i];
    row.energy_derivative = d;
    row.defect = d + ratio_a_ * row.hs_norm * row.hs_norm + ratio_b_ * row.hs1_norm * row.hs1_norm;
    if (row.hs_norm > 0.0) {
      row.cubic_constant = row.defect / (row.hs_norm * row.hs_norm * row.hs_norm);
    } else {
      row.cubic_constant.reset();
    }
  }
}

std::optional<double> EnergyLedger::k_run() const {
  std::optional<double> k;
  for (const LedgerRow& r : rows_) {
    if (r.cubic_constant && (!k || *r.cubic_constant > *k)) k = r.cubic_constant;
  }
  return k;
}

std::optional<std::size_t> EnergyLedger::first_increase_after(double tau_lo, double rel_tol) const {
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i - 1].tau < tau_lo) continue;
    if (rows_[i].hs_norm > rows_[i - 1].hs_norm * (1.0 + rel_tol)) return i;
  }
  return std::nullopt;
}

void EnergyLedger::write_csv(std::ostream& out) const {
  out << "tau,dt,hs_norm,hs1_norm,d_energy,defect,K\n";
  for (const LedgerRow& r : rows_) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},", r.tau, r.dt, r.hs_norm, r.hs1_norm,
               r.energy_derivative, r.defect);
    if (r.cubic_constant) fmt::print(out, "{:.17g}", *r.cubic_constant);
    out << '\n';
  }
}

void EnergyLedger::write_frame_csv(std::ostream& out) const {
  out << "tau,frame_norm\n";
  for (const LedgerRow& r : rows_) fmt::print(out, "{:.17g},{:.17g}\n", r.tau, r.frame_norm);
}

void EnergyLedger::write_plot_data(std::ostream& out) const {
  fmt::print(out, "# s = {}\n# tau hs_norm hs1_norm frame_norm defect\n", s_);
  for (const LedgerRow& r : rows_) {
    fmt::print(out, "{:.10g} {:.10g} {:.10g} {:.10g} {:.10g}\n", r.tau, r.hs_norm, r.hs1_norm, r.frame_norm,
               r.defect);
  }
}

double fit_log_slope(const std::vector<LedgerRow>& rows, RateWindow window, double LedgerRow::*column,
                     std::size_t* samples) {
  std::vector<double> x, y;
  for (const LedgerRow& r : rows) {
    if (r.tau < window.tau_lo || r.tau > window.tau_hi) continue;
    const double v = r.*column;
    if (!(v > 0.0)) {
      throw FitError(fmt::format("norm vanished at tau = {}; nothing left to fit", r.tau));
    }
    x.push_back(r.tau);
    y.push_back(std::log(v));
  }
  if (samples) *samples = x.size();
  if (x.size() < 10) {
    throw FitError(fmt::format("{} samples in [{}, {}], need at least 10", x.size(), window.tau_lo,
                               window.tau_hi));
  }
  return least_squares_slope(x, y);
}

RateVerdict fit_rate(const EnergyLedger& ledger, RateWindow window) {
  const RegimeReport report = classify(ledger.params());
  RateVerdict v;
  v.regime = report.verdict;
  v.window = window;
  v.theoretical_rate = report.verdict == Regime::Stable ? -stable_decay_exponent(ledger.params())
                                                        : std::numeric_limits<double>::quiet_NaN();
  try {
    v.fitted_rate = fit_log_slope(ledger.rows(), window, &LedgerRow::hs_norm, &v.samples);
  } catch (const FitError& e) {
    v.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    v.note = e.what();
    return v;
  }
  if (report.verdict == Regime::Stable) {
    v.checked = true;
    v.pass = v.fitted_rate <= -0.8 * report.ratio_a;
  } else if (report.verdict == Regime::Unstable) {
    v.checked = true;
    v.pass = v.fitted_rate > 0.0;
  } else {
    v.note = "no pass rule for this regime";
  }
  return v;
}

double physical_exponent(const ModelParams& params) { return stable_decay_exponent(params) + 1.0; }

RateVerdict physical_rate_verdict(const EnergyLedger& ledger, RateWindow window) {
  const RegimeReport report = classify(ledger.params());
  RateVerdict v;
  v.regime = report.verdict;
  v.window = window;
  if (report.verdict != Regime::Stable) {
    v.theoretical_rate = std::numeric_limits<double>::quiet_NaN();
    v.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    v.note = "not applicable outside the stable regime";
    return v;
  }
  v.theoretical_rate = physical_exponent(ledger.params());
  try {
    // ||v|| ~ (T - t)^p = exp(-p tau)
    v.fitted_rate = -fit_log_slope(ledger.rows(), window, &LedgerRow::frame_norm, &v.samples);
  } catch (const FitError& e) {
    v.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    v.note = e.what();
    return v;
  }
  v.checked = true;
  v.pass = std::abs(v.fitted_rate - v.theoretical_rate) <= 0.2 * std::abs(v.theoretical_rate);
  return v;
}

}  // namespace beq
