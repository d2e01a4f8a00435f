// include/beq/scenarios.hpp
//
// Experiment orchestration: single runs, regime sweeps and refinement
// studies, plus their on-disk artifacts (ledger CSV, checkpoints, verdict
// and manifest JSON, gnuplot data).

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "beq/analysis.hpp"
#include "beq/config.hpp"
#include "beq/dynamics.hpp"

namespace beq {

enum class ExitReason { Completed, CeilingHit, CflAbort, NanAbort, DomainAbort };

std::string_view exit_reason_name(ExitReason reason);

struct MonotoneVerdict {
  bool pass = false;
  bool checked = false;
  double tau_lo = 0.0;
  std::optional<double> first_increase_tau;
};

struct SimulationOptions {
  /// Constant step instead of the adaptive CFL step (must stay admissible).
  std::optional<double> fixed_dt;
  /// Stop at this tau instead of config.tau_end.
  std::optional<double> stop_tau;
  /// Called on the initial state, at every checkpoint interval and on the final state.
  std::function<void(const SimState&)> on_checkpoint;
};

struct SimulationResult {
  ExitReason exit = ExitReason::Completed;
  std::string message;
  EnergyLedger ledger;
  SimState final_state;  ///< last good state
  RegimeReport regime;
  RateVerdict rate;
  RateVerdict physical;
  MonotoneVerdict monotone;
  double growth_factor = 0.0;  ///< max ||w||_s / ||w0||_s
  std::optional<double> k_run;
  std::vector<std::string> warnings;

  /// Every checked verdict passes and the run was not aborted.
  bool all_pass() const;
};

/// Builds w0 from the configured perturbation.
SimState initial_state(const RunConfig& config, const Dynamics& dynamics, std::vector<std::string>* warnings);

/// Integrates in memory; throws InputError for an invalid config.
SimulationResult simulate(const RunConfig& config, const SimulationOptions& options = {});

struct FileRecord {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string config_hash;
  std::string code_version;
  std::string start_time;
  std::string end_time;
  ExitReason exit = ExitReason::Completed;
  std::string message;
  std::vector<FileRecord> files;
  std::vector<std::string> notes;
  bool all_pass = false;
};

/// simulate() plus artifacts in config.output_directory. The config is
/// validated before anything is written.
RunManifest run(const RunConfig& config);

std::string manifest_json(const RunManifest& manifest);
std::string verdict_json(const RunConfig& config, const SimulationResult& result);

struct SweepPoint {
  double b = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

struct SweepRow {
  SweepPoint point;
  std::optional<RegimeReport> regime;
  double fitted_rate = 0.0;
  std::string empirical;  ///< decay | growth | undetermined
  std::string exit_reason;
  std::string error;
  bool pass = false;
  bool checked = false;
};

/// One independent run per point (with config.output_directory/point_NNN as
/// its directory when write_runs is set), `jobs` at a time. Point failures are
/// recorded in their rows. Row order follows `points`.
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<SweepPoint>& points, std::size_t jobs,
                            bool write_runs = true);

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows);

enum class RefineMode { SpaceTime, TimeOnly };

struct RefineLevel {
  std::size_t level = 0;
  std::size_t points = 0;
  double dt = 0.0;        ///< dt_max (space-time) or the fixed step (time-only)
  double hs_norm = 0.0;   ///< ||w(tau*)||_s
  double fitted_rate = 0.0;
  double difference = 0.0;  ///< change from the previous level
  double observed_order = 0.0;
  std::string note;
};

struct RefineTable {
  RefineMode mode = RefineMode::SpaceTime;
  double tau_star = 0.0;
  std::vector<RefineLevel> levels;
  /// (max - min) / |mean| of the fitted rates (space-time mode).
  std::optional<double> rate_spread;
  /// Least-squares order of the level differences against the step size.
  std::optional<double> order;
  std::vector<std::string> notes;
};

struct RefineOptions {
  RefineMode mode = RefineMode::SpaceTime;
  std::size_t levels = 3;
  std::optional<double> tau_star;  ///< defaults to tau_end (space-time) or 1 (time-only)
  std::size_t max_points = (1u << 15) + 1;
};

/// Space-time mode: N_k = (N_0 - 1) 2^k + 1 with dt_max halved per level.
/// Time-only mode: fixed grid, constant dt halved per level, differences in
/// the max norm of w(tau*).
RefineTable refine(const RunConfig& config, const RefineOptions& options);

void write_refine_table(std::ostream& out, const RefineTable& table);

struct ReportSummary {
  bool all_pass = false;
  bool checksums_ok = false;
  std::string text;
};

/// Summarises a run directory (verdict + manifest, checksums re-verified) or
/// a sweep directory (regime_map.csv).
ReportSummary report(const std::filesystem::path& directory);

}  // namespace beq
