// src/config.cpp

#include "beq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "beq/checksum.hpp"
#include "beq/errors.hpp"

namespace beq {

namespace pt = boost::property_tree;

void RunConfig::validate() const {
  params.validate();
  if (params.alpha == 0.0) throw InputError("runs need alpha != 0");
  if (!(half_width > 0.0)) throw InputError("grid.half_width must be positive");
  if (points < 16) throw InputError("grid.points must be at least 16");
  if (!(s > 2.0)) throw InputError("analysis.s must exceed 2 for dynamics runs");
  if (!(perturbation.amplitude > 0.0)) throw InputError("perturbation.amplitude (sigma) must be positive");
  if (!(perturbation.width > 0.0)) throw InputError("perturbation.width must be positive");
  if (!(perturbation.wavenumber > 0.0)) throw InputError("perturbation.wavenumber must be positive");
  if (!(dt_max > 0.0)) throw InputError("integrator.dt_max must be positive");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0) throw InputError("integrator.cfl_safety must lie in (0, 1]");
  if (!(tau_end > 0.0)) throw InputError("integrator.tau_end must be positive");
  if (!(tau_end > -std::log(params.T))) throw InputError("integrator.tau_end must exceed -log T");
  if (!(ceiling > 1.0)) throw InputError("integrator.ceiling must exceed 1");
  if (!(boundary_tolerance > 0.0)) throw InputError("integrator.boundary_tolerance must be positive");
  if (!(window.tau_hi > window.tau_lo)) throw InputError("analysis window must have tau_hi > tau_lo");
  if (output_directory.empty()) throw InputError("output.directory must not be empty");
}

Grid RunConfig::grid() const { return Grid(half_width, points); }

DynamicsOptions RunConfig::dynamics_options() const {
  DynamicsOptions o;
  o.scheme = scheme;
  o.dealias = dealias;
  o.boundary_tolerance = boundary_tolerance;
  o.dt_max = dt_max;
  return o;
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("expected a boolean, got '" + v + "'");
}

// ptree's defaulted get() silently falls back on unparsable text.
template <typename T>
T get(const pt::ptree& tree, const char* key, T fallback) {
  const auto node = tree.get_child_optional(key);
  if (!node) return fallback;
  const auto value = node->get_value_optional<T>();
  if (!value) throw InputError(std::string("malformed value for ") + key + ": '" + node->data() + "'");
  return *value;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  RunConfig c;
  c.model = get<std::string>(tree, "model.name", c.model);
  c.params.T = get(tree, "model.T", 1.0);
  const char* numeric[] = {"model.alpha", "model.c0", "model.b", "model.gamma", "model.c1", "model.c2"};
  if (c.model == "custom") {
    ModelParams p;
    p.T = c.params.T;
    p.alpha = get(tree, "model.alpha", p.alpha);
    p.c0 = get(tree, "model.c0", p.c0);
    p.b = get(tree, "model.b", p.b);
    p.gamma = get(tree, "model.gamma", p.gamma);
    p.c1 = get(tree, "model.c1", p.c1);
    p.c2 = get(tree, "model.c2", p.c2);
    c.params = p;
  } else {
    c.params = load_preset(c.model, c.params.T);
    for (const char* key : numeric) {
      if (tree.get_optional<std::string>(key)) {
        throw InputError(std::string(key) + " given for preset '" + c.model + "'; use name = custom");
      }
    }
  }

  c.half_width = get(tree, "grid.half_width", c.half_width);
  c.points = get(tree, "grid.points", c.points);

  c.s = get(tree, "analysis.s", c.s);
  c.window.tau_lo = get(tree, "analysis.tau_lo", c.window.tau_lo);
  c.window.tau_hi = get(tree, "analysis.tau_hi", c.window.tau_hi);

  auto& p = c.perturbation;
  p.shape = parse_shape(get<std::string>(tree, "perturbation.shape", std::string(shape_name(p.shape))));
  p.amplitude = get(tree, "perturbation.amplitude", p.amplitude);
  p.center = get(tree, "perturbation.center", p.center);
  p.width = get(tree, "perturbation.width", p.width);
  p.wavenumber = get(tree, "perturbation.wavenumber", p.wavenumber);
  p.seed = get(tree, "perturbation.seed", p.seed);

  c.dt_max = get(tree, "integrator.dt_max", c.dt_max);
  c.cfl_safety = get(tree, "integrator.cfl_safety", c.cfl_safety);
  c.tau_end = get(tree, "integrator.tau_end", c.tau_end);
  c.ceiling = get(tree, "integrator.ceiling", c.ceiling);
  c.scheme = parse_transport_scheme(
      get<std::string>(tree, "integrator.scheme", std::string(transport_scheme_name(c.scheme))));
  c.dealias = parse_bool(get<std::string>(tree, "integrator.dealias", c.dealias ? "true" : "false"));
  c.boundary_tolerance = get(tree, "integrator.boundary_tolerance", c.boundary_tolerance);

  c.checkpoint_every = get(tree, "output.checkpoint_every", c.checkpoint_every);
  c.output_directory = get<std::string>(tree, "output.directory", c.output_directory);
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  return parse_config(in);
}

std::string to_ini(const RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
  auto num = [&](std::string_view key, double value) { out += fmt::format("{} = {:.17g}\n", key, value); };
  out += "[model]\n";
  line("name", c.model);
  num("T", c.params.T);
  if (c.model == "custom") {
    num("alpha", c.params.alpha);
    num("c0", c.params.c0);
    num("b", c.params.b);
    num("gamma", c.params.gamma);
    num("c1", c.params.c1);
    num("c2", c.params.c2);
  }
  out += "\n[grid]\n";
  num("half_width", c.half_width);
  line("points", c.points);
  out += "\n[analysis]\n";
  num("s", c.s);
  num("tau_lo", c.window.tau_lo);
  num("tau_hi", c.window.tau_hi);
  out += "\n[perturbation]\n";
  line("shape", shape_name(c.perturbation.shape));
  num("amplitude", c.perturbation.amplitude);
  num("center", c.perturbation.center);
  num("width", c.perturbation.width);
  num("wavenumber", c.perturbation.wavenumber);
  line("seed", c.perturbation.seed);
  out += "\n[integrator]\n";
  num("dt_max", c.dt_max);
  num("cfl_safety", c.cfl_safety);
  num("tau_end", c.tau_end);
  num("ceiling", c.ceiling);
  line("scheme", transport_scheme_name(c.scheme));
  line("dealias", c.dealias ? "true" : "false");
  num("boundary_tolerance", c.boundary_tolerance);
  out += "\n[output]\n";
  num("checkpoint_every", c.checkpoint_every);
  line("directory", c.output_directory);
  return out;
}

std::string default_config_text() {
  return R"(; beqlab run configuration. Lines starting with ';' are comments.

[model]
; camassa-holm | degasperis-procesi | fornberg-whitham | custom
; (kdv has alpha = 0 and cannot be evolved)
name = camassa-holm
; blowup time T (physical time units); runs start at tau = -log T
T = 1
; for name = custom also give: alpha (length), c0 (speed), b, gamma, c1, c2
; alpha = 1
; c0 = 0
; b = 2
; gamma = 0
; c1 = 2
; c2 = 1

[grid]
; half width L of the rho0 interval [-L, L] (length units, rho0 = x)
half_width = 30
; node count N; (power of two) + 1 recommended
points = 2049

[analysis]
; Sobolev order s of the ledger norms (> 2; > 3 for physical-rate verdicts)
s = 3
; fitting window [tau_lo, tau_hi] in similarity time
tau_lo = 0.5
tau_hi = 4

[perturbation]
; gaussian | sine-window | random-smooth
shape = gaussian
; sigma: H^s norm of u(0,x) minus the exact profile (dimensionless)
amplitude = 0.001
; center and width of the envelope (length units)
center = 0
width = 1
; sine carrier / random-smooth low-pass cutoff (1/length)
wavenumber = 2
; random-smooth seed
seed = 1

[integrator]
; largest step in tau
dt_max = 0.01
; fraction of the CFL limit 0.5 h / max|transport speed| actually used
cfl_safety = 0.9
; final similarity time
tau_end = 4
; stop when ||w||_s exceeds ceiling * ||w0||_s
ceiling = 1000
; upwind | weno3 transport differencing
scheme = upwind
; 2/3-rule filter on the nonlinear term
dealias = true
; edge/max ratio of |w| beyond which the domain counts as too small
boundary_tolerance = 1e-6

[output]
; checkpoint interval in tau (<= 0: first and last only)
checkpoint_every = 1
directory = runs/default
)";
}

// The output directory does not change the computation, so it is left out.
std::string config_hash(const RunConfig& config) {
  RunConfig c = config;
  c.output_directory.clear();
  return sha256_hex(to_ini(c));
}

}  // namespace beq
