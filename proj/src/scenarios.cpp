// src/scenarios.cpp

#include "beq/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <fftw3.h>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "beq/checksum.hpp"
#include "beq/errors.hpp"
#include "beq/exact.hpp"
#include "beq/fit.hpp"
#include "beq/frames.hpp"
#include "beq/perturbation.hpp"
#include "beq/spectral.hpp"

#ifndef BEQ_VERSION
#define BEQ_VERSION "unknown"
#endif

namespace beq {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view exit_reason_name(ExitReason reason) {
  switch (reason) {
    case ExitReason::Completed: return "completed";
    case ExitReason::CeilingHit: return "ceiling-hit";
    case ExitReason::CflAbort: return "cfl-abort";
    case ExitReason::NanAbort: return "nan-abort";
    case ExitReason::DomainAbort: return "domain-abort";
  }
  return "unknown";
}

bool SimulationResult::all_pass() const {
  if (exit == ExitReason::CflAbort || exit == ExitReason::NanAbort || exit == ExitReason::DomainAbort) {
    return false;
  }
  for (const RateVerdict* v : {&rate, &physical}) {
    if (v->checked && !v->pass) return false;
  }
  return !monotone.checked || monotone.pass;
}

SimState initial_state(const RunConfig& config, const Dynamics& dynamics, std::vector<std::string>* warnings) {
  const Grid grid = config.grid();
  const Field g = make_perturbation(grid, config.perturbation, config.s, config.params.alpha);
  const FieldRole w0 = initial_w_from_perturbation(config.params, g);
  if (warnings && config.params.T != 1.0) {
    warnings->push_back(fmt::format("T = {} != 1: similarity time starts at tau0 = -log T = {}", config.params.T,
                                    w0.tau));
  }
  return dynamics.initial_state(w0);
}

namespace {

struct Integration {
  ExitReason exit = ExitReason::Completed;
  std::string message;
};

Integration integrate(const Dynamics& dynamics, const RunConfig& config, const SimulationOptions& options,
                      SimState& state, EnergyLedger& ledger) {
  Integration out;
  const double stop = options.stop_tau.value_or(config.tau_end);
  const double hs0 = ledger.rows().front().hs_norm;
  const double every = config.checkpoint_every;
  double next_checkpoint = state.tau + every;
  bool checkpointed_last = true;

  std::size_t fixed_steps = 0;
  if (options.fixed_dt) {
    if (!(*options.fixed_dt > 0.0)) throw InputError("fixed dt must be positive");
    fixed_steps = static_cast<std::size_t>(std::llround((stop - state.tau) / *options.fixed_dt));
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(stop));

  for (std::size_t n = 0;; ++n) {
    double dt = 0.0;
    if (options.fixed_dt) {
      if (n >= fixed_steps) break;
      dt = *options.fixed_dt;
    } else {
      const double remaining = stop - state.tau;
      if (remaining <= tol) break;
      dt = std::min(config.dt_max, config.cfl_safety * dynamics.cfl_limit(state));
      if (remaining <= dt) {
        dt = remaining;
      } else if (remaining < 2.0 * dt) {
        dt = 0.5 * remaining;
      }
    }
    try {
      state = dynamics.step(state, dt);
    } catch (const CflError& e) {
      return {ExitReason::CflAbort, e.what()};
    } catch (const NumericalAbort& e) {
      return {ExitReason::NanAbort, e.what()};
    } catch (const DomainTooSmallError& e) {
      return {ExitReason::DomainAbort, e.what()};
    }
    ledger.record(state);
    checkpointed_last = false;
    if (every > 0.0 && state.tau >= next_checkpoint - tol) {
      if (options.on_checkpoint) options.on_checkpoint(state);
      checkpointed_last = true;
      while (next_checkpoint <= state.tau + tol) next_checkpoint += every;
    }
    if (hs0 > 0.0 && ledger.rows().back().hs_norm >= config.ceiling * hs0) {
      out = {ExitReason::CeilingHit,
             fmt::format("||w||_s reached {} x its initial value at tau = {}", config.ceiling, state.tau)};
      break;
    }
  }
  if (!checkpointed_last && options.on_checkpoint) options.on_checkpoint(state);
  return out;
}

}  // namespace

SimulationResult simulate(const RunConfig& config, const SimulationOptions& options) {
  config.validate();
  const Grid grid = config.grid();
  const Dynamics dynamics(config.params, grid, config.dynamics_options());
  std::vector<std::string> warnings;
  EnergyLedger ledger(config.params, grid, config.s);
  SimState state{Field::zeros(grid), -std::log(config.params.T), config.params, 0, 0.0};
  Integration integration;
  try {
    state = initial_state(config, dynamics, &warnings);
  } catch (const DomainTooSmallError& e) {
    // w0 itself reaches the edges: nothing to integrate
    integration = {ExitReason::DomainAbort, e.what()};
  }
  if (integration.exit != ExitReason::DomainAbort) {
    ledger.record(state);
    if (options.on_checkpoint) options.on_checkpoint(state);
    integration = integrate(dynamics, config, options, state, ledger);
  }

  SimulationResult result{integration.exit, integration.message, std::move(ledger), std::move(state),
                          classify(config.params), {}, {}, {}, 0.0, std::nullopt, std::move(warnings)};
  result.rate = fit_rate(result.ledger, config.window);
  result.physical = physical_rate_verdict(result.ledger, config.window);
  if (result.regime.verdict == Regime::Stable) {
    result.monotone.checked = true;
    result.monotone.tau_lo = config.window.tau_lo;
    if (auto i = result.ledger.first_increase_after(config.window.tau_lo)) {
      result.monotone.first_increase_tau = result.ledger.rows()[*i].tau;
    }
    result.monotone.pass = !result.monotone.first_increase_tau.has_value();
  }
  const auto& rows = result.ledger.rows();
  const double hs0 = rows.empty() ? 0.0 : rows.front().hs_norm;
  if (hs0 > 0.0) {
    double peak = 0.0;
    for (const LedgerRow& r : rows) peak = std::max(peak, r.hs_norm);
    result.growth_factor = peak / hs0;
  }
  result.k_run = result.ledger.k_run();
  return result;
}

namespace {

json verdict_to_json(const RateVerdict& v) {
  return {{"fitted_rate", v.fitted_rate},
          {"theoretical_rate", v.theoretical_rate},
          {"regime", regime_name(v.regime)},
          {"pass", v.pass},
          {"checked", v.checked},
          {"window", {v.window.tau_lo, v.window.tau_hi}},
          {"samples", v.samples},
          {"note", v.note}};
}

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                  std::chrono::system_clock::now())));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_checkpoint(const fs::path& path, const SimState& state, const std::string& hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const Grid& g = state.w.grid();
  fmt::print(out, "# frame = rho0\n# role = w\n# tau = {:.17g}\n# step = {}\n", state.tau, state.step_count);
  fmt::print(out, "# grid = half_width {:.17g} points {}\n# config_hash = {}\n", g.half_width(), g.size(), hash);
  out << "rho0,w\n";
  for (std::size_t i = 0; i < g.size(); ++i) fmt::print(out, "{:.17g},{:.17g}\n", g.node(i), state.w[i]);
}

struct Execution {
  RunManifest manifest;
  std::optional<SimulationResult> result;
};

Execution execute(const RunConfig& config) {
  config.validate();
  Execution ex;
  RunManifest& m = ex.manifest;
  m.config_hash = config_hash(config);
  m.code_version = BEQ_VERSION;
  m.start_time = utc_now();

  const fs::path dir = config.output_directory;
  fs::create_directories(dir / "checkpoints");
  write_text(dir / "config.ini", to_ini(config));

  std::vector<std::string> written{"config.ini"};
  std::size_t index = 0;
  SimulationOptions options;
  options.on_checkpoint = [&](const SimState& s) {
    const std::string name = fmt::format("checkpoints/w_{:04}.csv", index++);
    write_checkpoint(dir / name, s, m.config_hash);
    written.push_back(name);
  };
  ex.result.emplace(simulate(config, options));
  const SimulationResult& r = *ex.result;

  {
    std::ofstream out(dir / "ledger.csv", std::ios::binary);
    r.ledger.write_csv(out);
  }
  {
    std::ofstream out(dir / "frame_norms.csv", std::ios::binary);
    r.ledger.write_frame_csv(out);
  }
  {
    std::ofstream out(dir / "ledger.dat", std::ios::binary);
    r.ledger.write_plot_data(out);
  }
  write_text(dir / "verdict.json", verdict_json(config, r));
  for (const char* name : {"ledger.csv", "frame_norms.csv", "ledger.dat", "verdict.json"}) written.push_back(name);

  m.end_time = utc_now();
  m.exit = r.exit;
  m.message = r.message;
  m.all_pass = r.all_pass();
  m.notes = r.warnings;
  if (config.perturbation.amplitude == 1e-3) {
    m.notes.push_back("sigma = 1e-3 is the default small-data choice; no smallness threshold is claimed");
  }
  m.notes.push_back(fmt::format("compiler {}; {}", __VERSION__, fftw_version));
  for (const std::string& name : written) {
    m.files.push_back({name, sha256_file(dir / name), fs::file_size(dir / name)});
  }
  write_text(dir / "manifest.json", manifest_json(m));
  return ex;
}

}  // namespace

std::string verdict_json(const RunConfig& config, const SimulationResult& r) {
  json j;
  j["model"] = config.model;
  j["regime"] = regime_name(r.regime.verdict);
  j["ratio_a"] = r.regime.ratio_a;
  j["ratio_b"] = r.regime.ratio_b;
  j["s"] = config.s;
  j["exit_reason"] = exit_reason_name(r.exit);
  j["message"] = r.message;
  j["rate"] = verdict_to_json(r.rate);
  j["physical"] = verdict_to_json(r.physical);
  if (config.s <= 3.0 && r.physical.checked) {
    j["physical"]["note"] = "s <= 3: the physical-frame decay statement assumes s > 3";
  }
  j["monotone"] = {{"pass", r.monotone.pass},
                   {"checked", r.monotone.checked},
                   {"tau_lo", r.monotone.tau_lo},
                   {"first_increase_tau", r.monotone.first_increase_tau ? json(*r.monotone.first_increase_tau)
                                                                        : json(nullptr)}};
  j["growth_factor"] = r.growth_factor;
  j["k_run"] = r.k_run ? json(*r.k_run) : json(nullptr);
  j["final_tau"] = r.final_state.tau;
  j["steps"] = r.final_state.step_count;
  j["all_pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  json files = json::array();
  for (const FileRecord& f : m.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  json j{{"config_hash", m.config_hash},
         {"code_version", m.code_version},
         {"start_time", m.start_time},
         {"end_time", m.end_time},
         {"exit_reason", exit_reason_name(m.exit)},
         {"message", m.message},
         {"files", files},
         {"notes", m.notes},
         {"all_pass", m.all_pass}};
  return j.dump(2) + "\n";
}

RunManifest run(const RunConfig& config) { return execute(config).manifest; }

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<SweepPoint>& points, std::size_t jobs,
                            bool write_runs) {
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      SweepRow& row = rows[i];
      row.point = points[i];
      try {
        RunConfig c = base;
        c.model = "custom";
        c.params.b = points[i].b;
        c.params.c1 = points[i].c1;
        c.params.c2 = points[i].c2;
        c.output_directory = (fs::path(base.output_directory) / fmt::format("point_{:03}", i)).string();
        c.validate();
        row.regime = classify(c.params);
        std::optional<SimulationResult> result;
        if (write_runs) {
          result = std::move(execute(c).result);
        } else {
          result.emplace(simulate(c));
        }
        row.fitted_rate = result->rate.fitted_rate;
        row.exit_reason = std::string(exit_reason_name(result->exit));
        if (std::isnan(row.fitted_rate)) {
          row.empirical = "undetermined";
        } else {
          row.empirical = row.fitted_rate < 0.0 ? "decay" : "growth";
        }
        row.checked = result->rate.checked;
        row.pass = result->all_pass();
        if (!result->rate.note.empty()) row.error = result->rate.note;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.empirical = "undetermined";
        row.fitted_rate = std::numeric_limits<double>::quiet_NaN();
        row.exit_reason = "rejected";
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, points.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  if (write_runs) {
    fs::create_directories(base.output_directory);
    std::ofstream out(fs::path(base.output_directory) / "regime_map.csv", std::ios::binary);
    write_sweep_table(out, rows);
  }
  return rows;
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "b,c1,c2,ratio_a,ratio_b,predicted,fitted_rate,empirical,exit_reason,checked,pass,note\n";
  for (const SweepRow& r : rows) {
    std::string note = r.error;
    std::replace(note.begin(), note.end(), ',', ';');
    std::replace(note.begin(), note.end(), '\n', ' ');
    if (r.regime) {
      fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},", r.point.b, r.point.c1, r.point.c2,
                 r.regime->ratio_a, r.regime->ratio_b, regime_name(r.regime->verdict));
    } else {
      fmt::print(out, "{:.17g},{:.17g},{:.17g},,,rejected,", r.point.b, r.point.c1, r.point.c2);
    }
    fmt::print(out, "{:.17g},{},{},{},{},{}\n", r.fitted_rate, r.empirical, r.exit_reason, r.checked ? 1 : 0,
               r.pass ? 1 : 0, note);
  }
}

namespace {

double interpolate_norm(const std::vector<LedgerRow>& rows, double tau) {
  if (tau <= rows.front().tau) return rows.front().hs_norm;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].tau >= tau) {
      const double t = (tau - rows[i - 1].tau) / (rows[i].tau - rows[i - 1].tau);
      return (1.0 - t) * rows[i - 1].hs_norm + t * rows[i].hs_norm;
    }
  }
  return rows.back().hs_norm;
}

void fill_orders(RefineTable& table, const std::vector<double>& steps) {
  std::vector<double> x, y;
  for (std::size_t k = 1; k < table.levels.size(); ++k) {
    RefineLevel& lv = table.levels[k];
    lv.difference = std::abs(lv.difference);
    if (k >= 2 && lv.difference > 0.0 && table.levels[k - 1].difference > 0.0) {
      lv.observed_order = std::log2(table.levels[k - 1].difference / lv.difference);
    } else {
      lv.observed_order = std::numeric_limits<double>::quiet_NaN();
    }
    if (lv.difference > 0.0) {
      x.push_back(std::log(steps[k]));
      y.push_back(std::log(lv.difference));
    }
  }
  if (!table.levels.empty()) table.levels.front().observed_order = std::numeric_limits<double>::quiet_NaN();
  if (x.size() >= 2) table.order = least_squares_slope(x, y);
}

}  // namespace

RefineTable refine(const RunConfig& config, const RefineOptions& options) {
  config.validate();
  if (options.levels < 2) throw InputError("refine needs at least 2 levels");
  RefineTable table;
  table.mode = options.mode;
  const double tau0 = initial_similarity_time(config.params.T);
  std::vector<double> steps;

  if (options.mode == RefineMode::SpaceTime) {
    table.tau_star = options.tau_star.value_or(config.tau_end);
    std::vector<double> rates;
    for (std::size_t k = 0; k < options.levels; ++k) {
      RunConfig c = config;
      c.points = (config.points - 1) * (std::size_t{1} << k) + 1;
      c.dt_max = config.dt_max / static_cast<double>(std::size_t{1} << k);
      if (c.points > options.max_points) {
        table.notes.push_back(fmt::format("level {} needs N = {} > budget {}; table truncated", k, c.points,
                                          options.max_points));
        break;
      }
      const SimulationResult r = simulate(c);
      RefineLevel lv;
      lv.level = k;
      lv.points = c.points;
      lv.dt = c.dt_max;
      lv.hs_norm = interpolate_norm(r.ledger.rows(), table.tau_star);
      lv.fitted_rate = r.rate.fitted_rate;
      if (r.exit != ExitReason::Completed) lv.note = std::string(exit_reason_name(r.exit));
      if (!table.levels.empty()) lv.difference = lv.hs_norm - table.levels.back().hs_norm;
      table.levels.push_back(lv);
      steps.push_back(c.grid().spacing());
      if (std::isfinite(lv.fitted_rate)) rates.push_back(lv.fitted_rate);
    }
    if (rates.size() >= 2) {
      const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
      double mean = 0.0;
      for (double v : rates) mean += v;
      mean /= static_cast<double>(rates.size());
      if (mean != 0.0) table.rate_spread = (*hi - *lo) / std::abs(mean);
    }
  } else {
    table.tau_star = options.tau_star.value_or(tau0 + 1.0);
    if (!(table.tau_star > tau0)) throw InputError("tau* must lie after the initial time");
    const Dynamics dynamics(config.params, config.grid(), config.dynamics_options());
    const SimState s0 = initial_state(config, dynamics, nullptr);
    const double range = table.tau_star - tau0;
    const double base_dt = std::min(config.dt_max, config.cfl_safety * dynamics.cfl_limit(s0));
    const double n0 = std::ceil(range / base_dt);
    std::optional<Field> previous;
    for (std::size_t k = 0; k < options.levels; ++k) {
      SimulationOptions so;
      so.fixed_dt = range / (n0 * static_cast<double>(std::size_t{1} << k));
      so.stop_tau = table.tau_star;
      const SimulationResult r = simulate(config, so);
      RefineLevel lv;
      lv.level = k;
      lv.points = config.points;
      lv.dt = *so.fixed_dt;
      lv.hs_norm = r.ledger.rows().back().hs_norm;
      lv.fitted_rate = std::numeric_limits<double>::quiet_NaN();
      if (r.exit != ExitReason::Completed) lv.note = std::string(exit_reason_name(r.exit));
      if (previous) {
        double d = 0.0;
        for (std::size_t i = 0; i < previous->size(); ++i) d = std::max(d, std::abs(r.final_state.w[i] - (*previous)[i]));
        lv.difference = d;
      }
      previous = r.final_state.w;
      table.levels.push_back(lv);
      steps.push_back(lv.dt);
    }
  }
  fill_orders(table, steps);
  return table;
}

void write_refine_table(std::ostream& out, const RefineTable& t) {
  fmt::print(out, "# mode = {}\n# tau_star = {:.17g}\n", t.mode == RefineMode::SpaceTime ? "space-time" : "time-only",
             t.tau_star);
  if (t.order) fmt::print(out, "# fitted order = {:.6g}\n", *t.order);
  if (t.rate_spread) fmt::print(out, "# fitted-rate spread = {:.6g}\n", *t.rate_spread);
  for (const std::string& n : t.notes) fmt::print(out, "# note: {}\n", n);
  out << "level,points,dt,hs_norm,fitted_rate,difference,observed_order,note\n";
  for (const RefineLevel& l : t.levels) {
    fmt::print(out, "{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", l.level, l.points, l.dt, l.hs_norm,
               l.fitted_rate, l.difference, l.observed_order, l.note);
  }
}

ReportSummary report(const fs::path& directory) {
  ReportSummary summary;
  std::ostringstream text;
  const fs::path regime_map = directory / "regime_map.csv";
  const fs::path manifest_path = directory / "manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    const json m = json::parse(in);
    summary.checksums_ok = true;
    for (const auto& f : m.at("files")) {
      const fs::path p = directory / f.at("name").get<std::string>();
      const bool ok = fs::exists(p) && sha256_file(p) == f.at("sha256").get<std::string>();
      if (!ok) {
        summary.checksums_ok = false;
        text << "checksum mismatch: " << p.string() << '\n';
      }
    }
    std::ifstream vin(directory / "verdict.json");
    const json v = json::parse(vin);
    text << fmt::format("model {} ({}), exit {}\n", v.at("model").get<std::string>(),
                        v.at("regime").get<std::string>(), v.at("exit_reason").get<std::string>());
    for (const char* key : {"rate", "physical"}) {
      const json& r = v.at(key);
      text << fmt::format("{:>9}: fitted {} theory {} {}\n", key, r.at("fitted_rate").dump(),
                          r.at("theoretical_rate").dump(),
                          r.at("checked").get<bool>() ? (r.at("pass").get<bool>() ? "PASS" : "FAIL") : "unchecked");
    }
    const json& mono = v.at("monotone");
    text << fmt::format(" monotone: {}\n", mono.at("checked").get<bool>()
                                               ? (mono.at("pass").get<bool>() ? "PASS" : "FAIL")
                                               : "unchecked");
    text << fmt::format("growth factor {}, K_run {}\n", v.at("growth_factor").dump(), v.at("k_run").dump());
    text << "checksums " << (summary.checksums_ok ? "ok" : "MISMATCH") << '\n';
    summary.all_pass = v.at("all_pass").get<bool>() && summary.checksums_ok;
  } else if (fs::exists(regime_map)) {
    std::ifstream in(regime_map);
    std::string line;
    summary.all_pass = true;
    summary.checksums_ok = true;
    std::getline(in, line);
    text << line << '\n';
    while (std::getline(in, line)) {
      text << line << '\n';
      // columns: ...,checked,pass,note
      std::vector<std::string> cols;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
      if (cols.size() >= 11 && cols[9] == "1" && cols[10] != "1") summary.all_pass = false;
    }
  } else {
    throw InputError("no manifest.json or regime_map.csv in " + directory.string());
  }
  summary.text = text.str();
  return summary;
}

}  // namespace beq
