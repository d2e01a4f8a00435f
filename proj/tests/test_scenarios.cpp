#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beq/checksum.hpp"
#include "beq/config.hpp"
#include "beq/errors.hpp"
#include "beq/perturbation.hpp"
#include "beq/scenarios.hpp"
#include "beq/spectral.hpp"

using namespace beq;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("beq_test_" + name);
  fs::remove_all(p);
  return p;
}

RunConfig small_config(const std::string& model, const fs::path& out) {
  RunConfig c;
  c.model = model;
  c.params = load_preset(model);
  c.half_width = 25.0;
  c.points = 513;
  c.tau_end = 1.0;
  c.window = {0.2, 1.0};
  c.checkpoint_every = 0.5;
  c.output_directory = out.string();
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("SHA-256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("annotated defaults parse back to the default configuration") {
  std::istringstream in(default_config_text());
  const RunConfig parsed = parse_config(in);
  const RunConfig defaults;
  CHECK(to_ini(parsed) == to_ini(defaults));
  CHECK(config_hash(parsed) == config_hash(defaults));
}

TEST_CASE("INI round trip of a custom model") {
  RunConfig c;
  c.model = "custom";
  c.params.b = 1.7;
  c.params.c1 = 0.3;
  c.params.c2 = -0.2;
  c.params.gamma = 0.1;
  c.perturbation.shape = Shape::RandomSmooth;
  c.perturbation.seed = 99;
  c.scheme = TransportScheme::Weno3;
  std::istringstream in(to_ini(c));
  const RunConfig back = parse_config(in);
  CHECK(back.params == c.params);
  CHECK(to_ini(back) == to_ini(c));
}

TEST_CASE("invalid configurations are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  CHECK_THROWS_AS(parse("[perturbation]\namplitude = 0\n"), InputError);
  CHECK_THROWS_AS(parse("[model]\nname = kdv\n"), InputError);
  CHECK_THROWS_AS(parse("[model]\nname = custom\nb = -1\n"), InputError);
  CHECK_THROWS_AS(parse("[model]\nname = camassa-holm\nb = 3\n"), InputError);
  CHECK_THROWS_AS(parse("[analysis]\ns = 2\n"), InputError);
  CHECK_THROWS_AS(parse("[integrator]\nscheme = leapfrog\n"), InputError);
  CHECK_THROWS_AS(parse("[grid]\npoints = many\n"), InputError);
}

TEST_CASE("sigma = 0 is rejected before any file is written") {
  const fs::path out = scratch("sigma0");
  RunConfig c = small_config("ch", out);
  c.perturbation.amplitude = 0.0;
  CHECK_THROWS_AS(run(c), InputError);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("counter-based generator") {
  CHECK(counter_uniform(7, 3) == counter_uniform(7, 3));
  CHECK(counter_uniform(7, 3) != counter_uniform(8, 3));
  CHECK(counter_uniform(7, 3) != counter_uniform(7, 4));
  double mean = 0.0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double u = counter_uniform(1, i);
    CHECK(u >= -1.0);
    CHECK(u < 1.0);
    mean += u;
  }
  CHECK(std::abs(mean / 20000.0) < 0.02);
}

TEST_CASE("every perturbation shape is scaled to H^s size sigma") {
  const Grid g(30.0, 2049);
  for (Shape shape : {Shape::Gaussian, Shape::SineWindow, Shape::RandomSmooth}) {
    PerturbationSpec spec;
    spec.shape = shape;
    spec.amplitude = 2.5e-3;
    spec.width = 2.0;
    const Field f = make_perturbation(g, spec, 3.0, 1.0);
    CHECK(spectral_sobolev_norm(f.values(), g.spacing(), 3.0, 1.0) == doctest::Approx(2.5e-3).epsilon(1e-12));
    CHECK(std::abs(f[0]) < 1e-12);
    CHECK(std::abs(f[g.size() - 1]) < 1e-12);
  }
  PerturbationSpec bad;
  bad.amplitude = -1.0;
  CHECK_THROWS_AS(make_perturbation(g, bad, 3.0, 1.0), InputError);
}

TEST_CASE("runs are deterministic and the manifest covers every file") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const RunManifest ma = run(small_config("ch", a));
  const RunManifest mb = run(small_config("ch", b));
  CHECK(ma.exit == ExitReason::Completed);
  CHECK(ma.config_hash == mb.config_hash);
  REQUIRE(ma.files.size() == mb.files.size());
  for (std::size_t i = 0; i < ma.files.size(); ++i) {
    CHECK(ma.files[i].name == mb.files[i].name);
    if (ma.files[i].name != "config.ini") CHECK(ma.files[i].sha256 == mb.files[i].sha256);
  }
  CHECK(slurp(a / "ledger.csv") == slurp(b / "ledger.csv"));

  std::size_t listed = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
    const std::string rel = fs::relative(entry.path(), a).generic_string();
    bool found = false;
    for (const FileRecord& f : ma.files) found = found || f.name == rel;
    CHECK_MESSAGE(found, rel);
    ++listed;
  }
  CHECK(listed == ma.files.size());
  CHECK(report(a).checksums_ok);
  // checkpoint header carries frame, tau, grid and config hash
  const std::string ck = slurp(a / "checkpoints" / "w_0000.csv");
  CHECK(ck.find("# frame = rho0") != std::string::npos);
  CHECK(ck.find("# config_hash = " + ma.config_hash) != std::string::npos);
  CHECK(ck.find("# grid = half_width 25 points 513") != std::string::npos);
}

TEST_CASE("tampered outputs fail the checksum report") {
  const fs::path a = scratch("tamper");
  run(small_config("ch", a));
  { std::ofstream(a / "ledger.csv", std::ios::app) << "0,0,0,0,0,0,\n"; }
  CHECK_FALSE(report(a).checksums_ok);
  CHECK_FALSE(report(a).all_pass);
}

TEST_CASE("unstable runs stop at the ceiling") {
  const fs::path out = scratch("fw");
  RunConfig c = small_config("fw", out);
  c.tau_end = 4.0;
  c.ceiling = 10.0;
  const SimulationResult r = simulate(c);
  CHECK(r.exit == ExitReason::CeilingHit);
  CHECK(r.growth_factor >= 10.0);
  CHECK(r.final_state.tau < 4.0);
}

TEST_CASE("too small domains end in a domain abort") {
  RunConfig c = small_config("ch", scratch("narrow"));
  c.half_width = 4.0;
  c.points = 257;
  c.perturbation.width = 1.5;
  const SimulationResult r = simulate(c);
  CHECK(r.exit == ExitReason::DomainAbort);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("sweep rejects b = -1 per point and is independent of concurrency") {
  RunConfig base = small_config("ch", scratch("sweep"));
  base.tau_end = 0.6;
  const std::vector<SweepPoint> points{{2.0, 2.0, 1.0}, {-1.0, 1.0, 1.0}, {3.0, 3.0, 1.0}};
  const auto serial = sweep(base, points, 1, false);
  const auto parallel = sweep(base, points, 3, false);
  REQUIRE(serial.size() == 3);
  CHECK(serial[1].exit_reason == "rejected");
  CHECK_FALSE(serial[1].regime.has_value());
  CHECK(serial[0].regime->verdict == Regime::Stable);
  CHECK(serial[2].regime->verdict == Regime::Stable);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial[i].exit_reason == parallel[i].exit_reason);
    if (!std::isnan(serial[i].fitted_rate)) CHECK(serial[i].fitted_rate == parallel[i].fitted_rate);
  }
  std::ostringstream table;
  write_sweep_table(table, serial);
  CHECK(table.str().find("rejected") != std::string::npos);
}

TEST_CASE("refinement table structure") {
  RunConfig c = small_config("ch", scratch("refine"));
  c.points = 257;
  c.tau_end = 0.6;
  RefineOptions o;
  o.levels = 3;
  o.max_points = 600;
  const RefineTable t = refine(c, o);
  CHECK(t.levels.size() == 2);
  CHECK(t.levels[1].points == 513);
  CHECK_FALSE(t.notes.empty());

  RefineOptions time_only;
  time_only.mode = RefineMode::TimeOnly;
  time_only.levels = 3;
  time_only.tau_star = 0.3;
  const RefineTable tt = refine(c, time_only);
  REQUIRE(tt.order.has_value());
  CHECK(*tt.order > 3.5);
  CHECK(tt.levels[2].dt == doctest::Approx(tt.levels[0].dt / 4.0));
}
