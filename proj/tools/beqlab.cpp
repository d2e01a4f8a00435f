// tools/beqlab.cpp
//
// Command-line front end. Exit status: 0 when every executed verdict passes,
// 1 when a verdict fails, 2 on rejected input or runtime errors.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "beq/config.hpp"
#include "beq/errors.hpp"
#include "beq/exact.hpp"
#include "beq/model.hpp"
#include "beq/scenarios.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

// "b:c1:c2;b:c1:c2;..."
std::vector<beq::SweepPoint> parse_points(const std::string& text) {
  std::vector<beq::SweepPoint> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    if (item.empty()) continue;
    std::replace(item.begin(), item.end(), ':', ',');
    const std::vector<double> v = parse_list(item);
    if (v.size() != 3) throw beq::InputError("sweep point '" + item + "' needs b:c1:c2");
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

beq::RunConfig config_from(const std::string& path, const std::string& out_dir) {
  beq::RunConfig c = path.empty() ? beq::RunConfig{} : beq::load_config(path);
  if (!out_dir.empty()) c.output_directory = out_dir;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar blowup laboratory for the generalized b-equation"};
  app.require_subcommand(1);
  int status = 0;

  // classify
  auto* cls = app.add_subcommand("classify", "stability ratios and regime of a parameter set");
  std::string cls_preset;
  beq::ModelParams cls_params;
  cls->add_option("--preset", cls_preset, "camassa-holm | degasperis-procesi | fornberg-whitham | kdv");
  cls->add_option("--alpha", cls_params.alpha);
  cls->add_option("--b", cls_params.b);
  cls->add_option("--c1", cls_params.c1);
  cls->add_option("--c2", cls_params.c2);
  cls->callback([&] {
    const beq::ModelParams p = cls_preset.empty() ? cls_params : beq::load_preset(cls_preset);
    const beq::RegimeReport r = beq::classify(p);
    fmt::print("ratio_a = {:.17g}\nratio_b = {:.17g}\nverdict = {}\n", r.ratio_a, r.ratio_b,
               beq::regime_name(r.verdict));
  });

  // exact
  auto* ex = app.add_subcommand("exact", "CSV table t,x,u0,dudx of the self-similar solution");
  std::string ex_preset = "camassa-holm";
  double ex_T = 1.0, t_lo = 0.0, t_hi = 0.5, x_lo = -5.0, x_hi = 5.0;
  std::size_t nt = 6, nx = 11;
  ex->add_option("--preset", ex_preset);
  ex->add_option("--T", ex_T, "blowup time");
  ex->add_option("--t-lo", t_lo);
  ex->add_option("--t-hi", t_hi);
  ex->add_option("--nt", nt);
  ex->add_option("--x-lo", x_lo);
  ex->add_option("--x-hi", x_hi);
  ex->add_option("--nx", nx);
  ex->callback([&] {
    const beq::ModelParams p = beq::load_preset(ex_preset, ex_T);
    if (nt < 1 || nx < 1) throw beq::InputError("nt and nx must be positive");
    fmt::print("t,x,u0,dudx\n");
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = nt == 1 ? t_lo : t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(nt - 1);
      for (std::size_t j = 0; j < nx; ++j) {
        const double x =
            nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * static_cast<double>(j) / static_cast<double>(nx - 1);
        fmt::print("{:.17g},{:.17g},{:.17g},{:.17g}\n", t, x, beq::eval_u0(p, t, x), beq::slope_at_origin(p, t));
      }
    }
  });

  // run
  auto* run = app.add_subcommand("run", "evolve one perturbation and write ledger, verdicts and manifest");
  std::string run_config, run_out;
  run->add_option("-c,--config", run_config, "INI file (defaults when omitted)");
  run->add_option("-o,--out", run_out, "output directory (overrides the config)");
  run->callback([&] {
    const beq::RunConfig c = config_from(run_config, run_out);
    const beq::RunManifest m = beq::run(c);
    const beq::ReportSummary s = beq::report(c.output_directory);
    fmt::print("{}exit reason: {}\n", s.text, beq::exit_reason_name(m.exit));
    if (!m.message.empty()) fmt::print("{}\n", m.message);
    if (!m.all_pass) status = 1;
  });

  // sweep
  auto* sw = app.add_subcommand("sweep", "regime map over (b, c1, c2)");
  std::string sw_config, sw_out, sw_points, sw_b, sw_c1, sw_c2;
  std::size_t jobs = 1;
  sw->add_option("-c,--config", sw_config, "base INI file");
  sw->add_option("-o,--out", sw_out, "sweep directory");
  sw->add_option("--points", sw_points, "explicit points b:c1:c2;b:c1:c2;...");
  sw->add_option("--b", sw_b, "comma list (cartesian product with --c1, --c2)");
  sw->add_option("--c1", sw_c1);
  sw->add_option("--c2", sw_c2);
  sw->add_option("-j,--jobs", jobs, "concurrent runs");
  sw->callback([&] {
    const beq::RunConfig base = config_from(sw_config, sw_out);
    std::vector<beq::SweepPoint> points = parse_points(sw_points);
    if (!sw_b.empty() || !sw_c1.empty() || !sw_c2.empty()) {
      const auto bs = sw_b.empty() ? std::vector<double>{base.params.b} : parse_list(sw_b);
      const auto c1s = sw_c1.empty() ? std::vector<double>{base.params.c1} : parse_list(sw_c1);
      const auto c2s = sw_c2.empty() ? std::vector<double>{base.params.c2} : parse_list(sw_c2);
      for (double b : bs)
        for (double c1 : c1s)
          for (double c2 : c2s) points.push_back({b, c1, c2});
    }
    if (points.empty()) throw beq::InputError("sweep needs --points or --b/--c1/--c2");
    const auto rows = beq::sweep(base, points, jobs);
    beq::write_sweep_table(std::cout, rows);
    for (const auto& r : rows) {
      if (r.checked && !r.pass) status = 1;
    }
  });

  // refine
  auto* rf = app.add_subcommand("refine", "refinement study of a run configuration");
  std::string rf_config, rf_mode = "space-time", rf_out;
  std::size_t levels = 3;
  std::optional<double> tau_star;
  rf->add_option("-c,--config", rf_config);
  rf->add_option("--levels", levels)->check(CLI::Range(2, 8));
  rf->add_option("--mode", rf_mode, "space-time | time-only")->check(CLI::IsMember({"space-time", "time-only"}));
  rf->add_option("--tau-star", tau_star);
  rf->add_option("-o,--out", rf_out, "CSV file (stdout when omitted)");
  rf->callback([&] {
    const beq::RunConfig c = config_from(rf_config, "");
    beq::RefineOptions o;
    o.levels = levels;
    o.mode = rf_mode == "space-time" ? beq::RefineMode::SpaceTime : beq::RefineMode::TimeOnly;
    o.tau_star = tau_star;
    const beq::RefineTable t = beq::refine(c, o);
    if (rf_out.empty()) {
      beq::write_refine_table(std::cout, t);
    } else {
      std::ofstream out(rf_out);
      beq::write_refine_table(out, t);
      beq::write_refine_table(std::cout, t);
    }
  });

  // report
  auto* rp = app.add_subcommand("report", "summarise a run or sweep directory");
  std::string rp_dir;
  rp->add_option("directory", rp_dir)->required();
  rp->callback([&] {
    const beq::ReportSummary s = beq::report(rp_dir);
    fmt::print("{}", s.text);
    if (!s.all_pass) status = 1;
  });

  // config init
  auto* cfg = app.add_subcommand("config", "configuration helpers");
  auto* init = cfg->add_subcommand("init", "print the annotated default configuration");
  cfg->require_subcommand(1);
  std::string init_out;
  init->add_option("-o,--out", init_out, "write to a file instead of stdout");
  init->callback([&] {
    if (init_out.empty()) {
      fmt::print("{}", beq::default_config_text());
    } else {
      std::ofstream out(init_out);
      out << beq::default_config_text();
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const beq::InputError& e) {
    fmt::print(stderr, "rejected input: {}\n", e.what());
    return 2;
  } catch (const beq::BlowupDomainError& e) {
    fmt::print(stderr, "outside the blowup domain: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return status;
}
