// tests/acceptance.cpp
//
// Acceptance suite. Prints one PASS/FAIL line per criterion followed by the
// measured quantities. `--criterion N` runs a single criterion; the exit
// status is non-zero when any executed criterion fails.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "beq/analysis.hpp"
#include "beq/config.hpp"
#include "beq/dynamics.hpp"
#include "beq/exact.hpp"
#include "beq/helmholtz.hpp"
#include "beq/model.hpp"
#include "beq/perturbation.hpp"
#include "beq/scenarios.hpp"

using namespace beq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// CH, sigma = 1e-3, s = 3, N = 2048, tau in [0, 4].
RunConfig decay_config(const std::string& model, std::size_t points = 2048) {
  RunConfig c;
  c.model = model;
  c.params = load_preset(model);
  c.half_width = 30.0;
  c.points = points;
  c.s = 3.0;
  c.perturbation.amplitude = 1e-3;
  c.tau_end = 4.0;
  c.window = {0.5, 4.0};
  c.checkpoint_every = 0.0;
  return c;
}

std::string ledger_csv(const SimulationResult& r) {
  std::ostringstream out;
  r.ledger.write_csv(out);
  return out.str();
}

Outcome exact_solution() {
  Outcome o{true, ""};
  for (const char* name : {"camassa-holm", "degasperis-procesi", "fornberg-whitham", "kdv"}) {
    const ModelParams p = load_preset(name);
    const SpaceTimeWindow win{0.0, 0.5 * p.T, -5.0, 5.0};
    const ResidualReport r = residual_oracle(p, exact_solution_sampler(p), win, 1e-3, 1e-3, 3);
    const bool ok = r.max_abs_residual <= 1e-8 && r.convergence_order >= 1.9;
    o.pass = o.pass && ok;
    o.detail += fmt::format("\n    {:<20} max residual {:.3e} (<= 1e-8), order {:.3f} (>= 1.9)", name,
                            r.max_abs_residual, r.convergence_order);
  }
  return o;
}

Outcome classification() {
  const RegimeReport ch = classify(load_preset("ch"));
  const RegimeReport dp = classify(load_preset("dp"));
  const RegimeReport fw = classify(load_preset("fw"));
  const RegimeReport kdv = classify(load_preset("kdv"));
  const bool pass = ch.verdict == Regime::Stable && dp.verdict == Regime::Stable &&
                    fw.verdict == Regime::Unstable && kdv.verdict == Regime::NotApplicable &&
                    std::abs(ch.ratio_a - 1.0) <= 1e-12 && std::abs(dp.ratio_a - 0.75) <= 1e-12 &&
                    std::abs(fw.ratio_a + 3.0) <= 1e-12;
  return {pass, fmt::format("\n    CH {} {:.17g}, DP {} {:.17g}, FW {} {:.17g}, KdV {}", regime_name(ch.verdict),
                            ch.ratio_a, regime_name(dp.verdict), dp.ratio_a, regime_name(fw.verdict), fw.ratio_a,
                            regime_name(kdv.verdict))};
}

Outcome helmholtz_machinery() {
  Outcome o{true, ""};
  std::vector<double> errors, spacings;
  for (std::size_t n : {512u, 1024u, 2048u}) {
    const Grid g(20.0, n);
    const HelmholtzOps ops(1.0, g);
    const Field f = Field::from_function(g, [](double x) { return std::exp(-x * x) * (1.0 + 0.5 * x); });
    const Field back = ops.apply_inverse(ops.apply_forward(f));
    const Field tri = ops.apply_inverse(f);
    const Field quad = ops.convolve_kernel(f);
    double round = 0.0, agree = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      round = std::max(round, std::abs(back[i] - f[i]));
      agree = std::max(agree, std::abs(tri[i] - quad[i]));
    }
    const bool ok = round <= 1e-10 * f.max_abs();
    o.pass = o.pass && ok;
    errors.push_back(agree);
    spacings.push_back(g.spacing());
    o.detail += fmt::format("\n    N = {:4}: roundtrip {:.3e} (<= 1e-10 max|g|), tri vs quadrature {:.3e}", n,
                            round / f.max_abs(), agree);
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    lx.push_back(std::log(spacings[i]));
    ly.push_back(std::log(errors[i]));
  }
  double sxx = 0.0, sxy = 0.0;
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double order = sxy / sxx;
  o.pass = o.pass && order >= 1.9;
  o.detail += fmt::format("\n    observed agreement order {:.3f} (>= 1.9)", order);
  return o;
}

Outcome dissipativity() {
  Outcome o{true, ""};
  const Grid grid(30.0, 2048);
  for (const char* name : {"camassa-holm", "degasperis-procesi"}) {
    const ModelParams p = load_preset(name);
    const Dynamics dyn(p, grid);
    int negative = 0, total = 0;
    double worst_gap = 0.0, largest_q = -INFINITY;
    for (double tau : {0.0, 1.0, 2.0}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        PerturbationSpec spec;
        spec.shape = Shape::RandomSmooth;
        spec.seed = seed;
        spec.width = 3.0;
        const Field w = make_perturbation(grid, spec, 3.0, p.alpha);
        const DissipativityReport r = dyn.dissipativity_report({w, tau, p, 0, 0.0}, 3.0);
        ++total;
        if (r.quad_form < 0.0) ++negative;
        worst_gap = std::max(worst_gap, r.relative_gap);
        largest_q = std::max(largest_q, r.quad_form / r.hs_norm_sq);
      }
    }
    const bool ok = negative == total && worst_gap <= 0.25;
    o.pass = o.pass && ok;
    o.detail += fmt::format(
        "\n    {:<20} quad form < 0 in {}/{} cases, largest Q/||w||^2 {:.4f}, worst relative gap {:.3f} (<= 0.25)",
        name, negative, total, largest_q, worst_gap);
  }
  return o;
}

Outcome stable_decay() {
  const SimulationResult ch = simulate(decay_config("camassa-holm"));
  const SimulationResult dp = simulate(decay_config("degasperis-procesi"));
  const double bound = -0.8 * ch.regime.ratio_a;
  const bool pass = ch.exit == ExitReason::Completed && ch.monotone.pass && ch.rate.fitted_rate <= bound &&
                    ch.physical.pass && dp.physical.pass;
  std::string first_increase = ch.monotone.first_increase_tau
                                   ? fmt::format("first increase at tau = {:.4f}", *ch.monotone.first_increase_tau)
                                   : std::string("non-increasing");
  return {pass,
          fmt::format("\n    CH exit {}, ||w||_H3 after tau = 0.5: {}, growth factor {:.3f}"
                      "\n    CH fitted rate {:.4f} (<= {:.2f})"
                      "\n    CH physical exponent {:.4f} (2 +- 20%), DP physical exponent {:.4f} (1.75 +- 20%)",
                      exit_reason_name(ch.exit), first_increase, ch.growth_factor, ch.rate.fitted_rate, bound,
                      ch.physical.fitted_rate, dp.physical.fitted_rate)};
}

Outcome instability() {
  int grew = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig c = decay_config("fornberg-whitham");
    c.perturbation.shape = Shape::RandomSmooth;
    c.perturbation.seed = seed;
    c.perturbation.width = 3.0;
    c.ceiling = 10.0;
    const SimulationResult r = simulate(c);
    const bool ok = r.growth_factor >= 10.0 && r.final_state.tau < 4.0;
    if (ok) ++grew;
    detail += fmt::format("\n    seed {:2}: exit {}, growth x{:.2f} by tau = {:.3f}", seed, exit_reason_name(r.exit),
                          r.growth_factor, r.final_state.tau);
  }
  return {grew >= 8, fmt::format("\n    {}/10 seeds reached 10 ||w0||_H3 before tau = 4 (need 8){}", grew, detail)};
}

Outcome energy_ledger() {
  const SimulationResult coarse = simulate(decay_config("camassa-holm", 1024));
  const SimulationResult fine = simulate(decay_config("camassa-holm", 2048));
  if (!coarse.k_run || !fine.k_run) return {false, "\n    K_run undefined (zero norms)"};
  const double k1 = *coarse.k_run, k2 = *fine.k_run;
  // K_run is the smallest K that bounds every row of its run.
  bool rows_ok = true;
  for (const SimulationResult* r : {&coarse, &fine}) {
    for (const LedgerRow& row : r->ledger.rows()) {
      if (row.hs_norm > 0.0) rows_ok = rows_ok && row.defect <= *r->k_run * std::pow(row.hs_norm, 3) * (1 + 1e-12);
    }
  }
  const double ratio = std::max(k1, k2) / std::min(k1, k2);
  const bool pass = rows_ok && k1 > 0.0 && k2 > 0.0 && ratio < 2.0;
  return {pass, fmt::format("\n    K_run(N=1024) {:.4g}, K_run(N=2048) {:.4g}, ratio {:.3f} (< 2)", k1, k2, ratio)};
}

Outcome fixed_point() {
  const ModelParams p = load_preset("camassa-holm");
  const Dynamics dyn(p, Grid(30.0, 2048));
  SimState s{Field::zeros(dyn.grid()), 0.0, p, 0, 0.0};
  for (int i = 0; i < 10000; ++i) s = dyn.step(s, dyn.admissible_dt(s));
  std::size_t nonzero = 0;
  for (double v : s.w.values()) nonzero += std::bit_cast<std::uint64_t>(v) != 0;
  return {nonzero == 0, fmt::format("\n    {} steps to tau = {:.4f}, {} non-zero words", s.step_count, s.tau, nonzero)};
}

Outcome determinism() {
  const std::string a = ledger_csv(simulate(decay_config("camassa-holm")));
  const std::string b = ledger_csv(simulate(decay_config("camassa-holm")));
  return {a == b, fmt::format("\n    ledger CSV {} bytes, identical: {}", a.size(), a == b ? "yes" : "no")};
}

Outcome temporal_convergence() {
  RefineOptions o;
  o.mode = RefineMode::TimeOnly;
  o.levels = 3;
  o.tau_star = 1.0;
  const RefineTable t = refine(decay_config("camassa-holm"), o);
  std::string detail;
  for (const RefineLevel& l : t.levels) {
    detail += fmt::format("\n    dt {:.4e}: change {:.3e}", l.dt, l.difference);
  }
  const double order = t.order.value_or(NAN);
  return {order >= 3.5, fmt::format("{}\n    observed order {:.3f} (>= 3.5)", detail, order)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"exact solution residual", exact_solution}},
      {2, {"regime classification", classification}},
      {3, {"Helmholtz roundtrip and kernel agreement", helmholtz_machinery}},
      {4, {"dissipativity of L (CH, DP; s = 3)", dissipativity}},
      {5, {"stable decay and physical exponents", stable_decay}},
      {6, {"generic growth under FW", instability}},
      {7, {"energy-inequality constant under refinement", energy_ledger}},
      {8, {"zero perturbation fixed point", fixed_point}},
      {9, {"bit-identical reruns", determinism}},
      {10, {"RK4 temporal order", temporal_convergence}},
  };

  bool all = true;
  for (const auto& [id, entry] : criteria) {
    if (only != 0 && id != only) continue;
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("\n    error: {}", e.what())};
    }
    all = all && o.pass;
    fmt::print("{} criterion {}: {}{}\n", o.pass ? "PASS" : "FAIL", id, entry.first, o.detail);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
