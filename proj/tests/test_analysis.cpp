#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "beq/analysis.hpp"
#include "beq/errors.hpp"

using namespace beq;

namespace {

EnergyLedger synthetic(const ModelParams& p, double rate, double frame_power, int n = 81) {
  EnergyLedger ledger(p, Grid(10.0, 64), 3.0);
  for (int i = 0; i < n; ++i) {
    const double tau = 0.05 * i;
    ledger.append(tau, i == 0 ? 0.0 : 0.05, 0.7 * std::exp(rate * tau), 0.3 * std::exp(rate * tau),
                  2.0 * std::exp(-frame_power * tau));
  }
  return ledger;
}

}  // namespace

TEST_CASE("exact exponential ledgers are fitted to rounding") {
  const ModelParams ch = load_preset("ch");
  const RateVerdict v = fit_rate(synthetic(ch, -1.0, 2.0), {0.5, 4.0});
  CHECK(v.fitted_rate == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(v.theoretical_rate == doctest::Approx(-1.0));
  CHECK(v.regime == Regime::Stable);
  CHECK(v.checked);
  CHECK(v.pass);
  CHECK(v.samples >= 10);

  const RateVerdict slow = fit_rate(synthetic(ch, -0.5, 2.0), {0.5, 4.0});
  CHECK(slow.checked);
  CHECK_FALSE(slow.pass);
}

TEST_CASE("physical exponent verdict on a synthetic power law") {
  const ModelParams ch = load_preset("ch");
  const RateVerdict v = physical_rate_verdict(synthetic(ch, -1.0, 2.0), {0.5, 4.0});
  CHECK(v.theoretical_rate == doctest::Approx(2.0));
  CHECK(v.fitted_rate == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(v.pass);
  CHECK(physical_exponent(load_preset("dp")) == doctest::Approx(1.75));

  const RateVerdict fw = physical_rate_verdict(synthetic(load_preset("fw"), 1.0, 2.0), {0.5, 4.0});
  CHECK_FALSE(fw.checked);
}

TEST_CASE("unstable regime passes on growth") {
  const ModelParams fw = load_preset("fw");
  CHECK(fit_rate(synthetic(fw, 0.8, 0.0), {0.5, 4.0}).pass);
  CHECK_FALSE(fit_rate(synthetic(fw, -0.1, 0.0), {0.5, 4.0}).pass);
}

TEST_CASE("fit needs ten samples and non-zero norms") {
  const ModelParams ch = load_preset("ch");
  const RateVerdict few = fit_rate(synthetic(ch, -1.0, 2.0, 12), {0.5, 4.0});
  CHECK_FALSE(few.checked);
  CHECK(std::isnan(few.fitted_rate));
  CHECK_THROWS_AS(fit_log_slope(synthetic(ch, -1.0, 2.0, 12).rows(), {0.5, 4.0}, &LedgerRow::hs_norm), FitError);

  EnergyLedger zero(ch, Grid(10.0, 64), 3.0);
  for (int i = 0; i < 40; ++i) zero.append(0.1 * i, 0.1, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(fit_log_slope(zero.rows(), {0.5, 4.0}, &LedgerRow::hs_norm), FitError);
  for (const LedgerRow& r : zero.rows()) {
    CHECK(r.defect == 0.0);
    CHECK_FALSE(r.cubic_constant.has_value());
  }
  CHECK_FALSE(zero.k_run().has_value());
}

TEST_CASE("tau must increase") {
  EnergyLedger ledger(load_preset("ch"), Grid(10.0, 64), 3.0);
  ledger.append(0.0, 0.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(ledger.append(0.0, 0.1, 1.0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(ledger.append(-0.1, 0.1, 1.0, 1.0, 1.0), InputError);
}

TEST_CASE("energy derivative and defect") {
  // hs^2 = e^{-2 tau} on a non-uniform tau lattice; the three-point formula is
  // exact for quadratics, so compare to the analytic derivative at O(h^2).
  const ModelParams ch = load_preset("ch");
  EnergyLedger ledger(ch, Grid(10.0, 64), 3.0);
  double tau = 0.0;
  for (int i = 0; i < 50; ++i) {
    ledger.append(tau, 0.0, std::exp(-tau), 0.5 * std::exp(-tau), 1.0);
    tau += 0.01 + 0.005 * (i % 3);
  }
  const auto& rows = ledger.rows();
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double e = std::exp(-2.0 * rows[i].tau);
    CHECK(rows[i].energy_derivative == doctest::Approx(-2.0 * e).epsilon(1e-3));
    const double defect = rows[i].energy_derivative + 1.0 * e + (4.0 / 3.0) * 0.25 * e;
    CHECK(rows[i].defect == doctest::Approx(defect).epsilon(1e-12));
    CHECK(*rows[i].cubic_constant == doctest::Approx(defect / std::pow(rows[i].hs_norm, 3)).epsilon(1e-12));
  }
  CHECK(ledger.k_run().has_value());
}

TEST_CASE("monotonicity check after the transient") {
  EnergyLedger ledger(load_preset("ch"), Grid(10.0, 64), 3.0);
  const double values[] = {1.0, 1.2, 1.1, 1.0, 0.9, 0.95, 0.8};
  for (int i = 0; i < 7; ++i) ledger.append(0.25 * i, 0.25, values[i], 1.0, 1.0);
  CHECK(ledger.first_increase_after(0.0) == std::optional<std::size_t>(1));
  CHECK(ledger.first_increase_after(0.5) == std::optional<std::size_t>(5));
  CHECK_FALSE(ledger.first_increase_after(1.25).has_value());
}

TEST_CASE("CSV columns and formatting") {
  const EnergyLedger ledger = synthetic(load_preset("ch"), -1.0, 2.0, 3);
  std::ostringstream out;
  ledger.write_csv(out);
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "tau,dt,hs_norm,hs1_norm,d_energy,defect,K");
  CHECK(first.rfind("0,0,0.69999999999999996,", 0) == 0);
}
