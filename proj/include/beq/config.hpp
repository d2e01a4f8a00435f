// include/beq/config.hpp
//
// Run configuration, read from and written to INI text. `config init`
// prints default_config_text(), which documents units and defaults.

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>

#include "beq/analysis.hpp"
#include "beq/dynamics.hpp"
#include "beq/grid.hpp"
#include "beq/model.hpp"
#include "beq/perturbation.hpp"

namespace beq {

struct RunConfig {
  std::string model = "camassa-holm";  ///< preset name or "custom"
  ModelParams params = preset_params(Preset::CamassaHolm);

  double half_width = 30.0;
  std::size_t points = 2049;

  double s = 3.0;
  PerturbationSpec perturbation;

  double dt_max = 0.01;
  double cfl_safety = 0.9;
  double tau_end = 4.0;      ///< absolute similarity time; runs start at -log T
  double ceiling = 1000.0;   ///< stop once ||w||_s >= ceiling * ||w0||_s
  TransportScheme scheme = TransportScheme::Upwind;
  bool dealias = true;
  double boundary_tolerance = 1e-6;

  RateWindow window;
  double checkpoint_every = 1.0;  ///< in tau; <= 0 disables interior checkpoints

  std::string output_directory = "runs/default";

  /// Throws InputError on any violated invariant.
  void validate() const;
  Grid grid() const;
  DynamicsOptions dynamics_options() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration as INI text; parse_config(to_ini(c)) == c.
std::string to_ini(const RunConfig& config);

/// Annotated defaults with units.
std::string default_config_text();

/// SHA-256 hex digest of to_ini(config) with the output directory blanked.
std::string config_hash(const RunConfig& config);

}  // namespace beq
