// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line surface: run (single trajectory + bound report), sweep
// (alpha | galerkin | combined convergence studies), identities (bilinear
// identity and inequality battery). All artifacts land in --out.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "alphaflow/config_io.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace alphaflow;

namespace {

// Distinct exit codes per failure class.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kHypothesisFailure = 3,
  kNumericAbort = 4,
  kAssertionFailure = 5,
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct Manifest {
  fs::path path;
  nlohmann::json j;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Manifest(const fs::path& out_dir, const std::string& command, const nlohmann::json& config) {
    path = out_dir / "manifest.json";
    j["tool"] = "alphaflow";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["platform"] = {
#if defined(__clang__)
        {"compiler", "clang " __clang_version__},
#elif defined(__GNUC__)
        {"compiler", "gcc " __VERSION__},
#else
        {"compiler", "unknown"},
#endif
        {"pointer_bits", 8 * static_cast<int>(sizeof(void*))},
    };
    j["status"] = "running";
    j["outputs"] = nlohmann::json::array();
    write_file(path, j.dump(2) + "\n");
  }

  void add_output(const fs::path& p) { j["outputs"].push_back(p.string()); }

  void finish(const std::string& status, long steps = -1) {
    j["status"] = status;
    j["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (steps >= 0) j["steps"] = steps;
    write_file(path, j.dump(2) + "\n");
  }
};

int cmd_run(const fs::path& config_path, const fs::path& out_dir,
            std::optional<std::uint64_t> seed_override) {
  SimConfig cfg = parse_sim_config(read_file(config_path));
  if (seed_override) cfg.seed = *seed_override;
  Manifest manifest(out_dir, "run", nlohmann::json::parse(sim_config_json(cfg)));

  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  const double cutoff = cfg.effective_cutoff(*lat);

  try {
    const Trajectory traj = run_simulation(cfg);
    const DataNorms d = data_norms(traj.samples.front().u, make_forcing(lat, cfg), cfg.t_end);
    const BoundConstants k =
        compute_constants(cfg, d, lat->last_eigenvalue_at_or_below(cutoff),
                          lat->next_eigenvalue_above(cutoff), Calibration{});

    const fs::path csv_path = out_dir / "trajectory.csv";
    write_file(csv_path, trajectory_csv(traj));
    manifest.add_output(csv_path);

    const AprioriReport apriori = monitor_apriori(traj, cfg, k);
    const bool wants_alpha_bounds = cfg.model != ModelKind::NSE && cfg.alpha > 0.0;
    std::optional<LinftyBoundReport> linfty;
    if (wants_alpha_bounds) linfty = linfty_model_bound(traj, cfg, k);

    const fs::path bounds_path = out_dir / "bounds.json";
    write_file(bounds_path,
               bound_report_json(cfg, k, apriori, linfty ? &*linfty : nullptr) + "\n");
    manifest.add_output(bounds_path);

    if (wants_alpha_bounds && !k.alpha_hypothesis_ok) {
      std::cerr << "hypothesis failure: L/(2 pi alpha) >= 1 does not hold for alpha = "
                << cfg.alpha << "\n";
      manifest.finish("hypothesis-failure", traj.stats.steps);
      return kHypothesisFailure;
    }
    if (!apriori.pass) {
      std::cerr << "a-priori monitor violation; see " << bounds_path << "\n";
      manifest.finish("assertion-failure", traj.stats.steps);
      return kAssertionFailure;
    }
    manifest.finish("complete", traj.stats.steps);
    std::cout << "run complete: " << traj.stats.steps << " steps, outputs in " << out_dir
              << "\n";
    return kOk;
  } catch (const NumericError& e) {
    std::cerr << "numeric abort: " << e.what() << "\n";
    manifest.finish("numeric-abort");
    return kNumericAbort;
  }
}

int cmd_sweep(const std::string& kind, const fs::path& config_path, const fs::path& out_dir,
              bool emit_svg, int parallel, std::optional<std::uint64_t> seed_override) {
  const std::string text = read_file(config_path);
  SweepSpec spec = parse_sweep_spec(text);
  if (seed_override) spec.base.seed = *seed_override;
  if (parallel > 0) spec.parallelism = parallel;

  // Calibration: explicit override in the config wins; otherwise measure a
  // frozen battery on a small lattice derived from the base seed.
  Calibration cal;
  const auto j = nlohmann::json::parse(text);
  if (j.contains("calibration")) {
    cal = parse_calibration(j.at("calibration").dump());
  } else {
    auto small = Lattice::create(spec.base.box_length, std::min(spec.base.resolution, 32));
    cal = calibrate(small, 40, spec.base.seed ^ 0xa5a5a5a5ULL);
  }

  Manifest manifest(out_dir, "sweep-" + kind, nlohmann::json::parse(sweep_spec_json(spec)));
  try {
    SweepResult res;
    if (kind == "alpha") {
      res = alpha_sweep(spec, spec.base.model, cal);
    } else if (kind == "galerkin") {
      res = galerkin_sweep(spec, cal);
    } else if (kind == "combined") {
      res = combined_sweep(spec, cal);
    } else {
      std::cerr << "unknown sweep kind '" << kind << "' (alpha|galerkin|combined)\n";
      manifest.finish("config-error");
      return kConfigError;
    }

    const fs::path csv_path = out_dir / "sweep.csv";
    write_file(csv_path, res.csv());
    manifest.add_output(csv_path);
    const fs::path json_path = out_dir / "summary.json";
    write_file(json_path, res.json() + "\n");
    manifest.add_output(json_path);

    if (emit_svg) {
      using tools::PlotSeries;
      PlotSeries data, fitline, bound;
      const bool squared = kind == "combined";
      data.label = squared ? "measured error^2" : "measured error";
      bound.label = "theorem bound";
      bound.color = "#d62728";
      bound.line = true;
      fitline.label = "fit";
      fitline.color = "#2ca02c";
      fitline.line = true;
      for (const auto& p : res.points) {
        const double e = squared ? p.error * p.error : p.error;
        data.x.push_back(p.fit_x);
        data.y.push_back(e);
        bound.x.push_back(p.fit_x);
        bound.y.push_back(squared ? p.bound_sq : std::sqrt(p.bound_sq));
        if (!res.fit.degenerate) {
          fitline.x.push_back(p.fit_x);
          fitline.y.push_back(res.fit.prefactor * std::pow(p.fit_x, res.fit.order));
        }
      }
      const fs::path svg_path = out_dir / "sweep.svg";
      write_file(svg_path,
                 tools::svg_loglog({data, fitline, bound}, kind + " sweep (" + res.model + ")",
                                   res.fit.form, data.label));
      manifest.add_output(svg_path);
    }

    if (!res.pass()) {
      std::cerr << "sweep gates failed; see " << json_path << "\n";
      manifest.finish("assertion-failure");
      return kAssertionFailure;
    }
    manifest.finish("complete");
    std::cout << "sweep complete: fitted order " << res.fit.order << ", outputs in " << out_dir
              << "\n";
    return kOk;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    manifest.finish("hypothesis-failure");
    return kHypothesisFailure;
  } catch (const ResolutionError& e) {
    std::cerr << "time resolution failure: " << e.what() << "\n";
    manifest.finish("assertion-failure");
    return kAssertionFailure;
  } catch (const NumericError& e) {
    std::cerr << "numeric abort: " << e.what() << "\n";
    manifest.finish("numeric-abort");
    return kNumericAbort;
  }
}

int cmd_identities(const fs::path& config_path, const fs::path& out_dir, int trials) {
  const SimConfig cfg = parse_sim_config(read_file(config_path));
  if (trials <= 0) {
    std::cerr << "identities: --trials must be positive\n";
    return kConfigError;
  }
  Manifest manifest(out_dir, "identities", nlohmann::json::parse(sim_config_json(cfg)));

  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  auto lat2 = Lattice::create(cfg.box_length, 2 * cfg.resolution);
  const IdentityReport rep = identity_suite(lat, trials, cfg.seed);
  const IdentityReport rep2 = identity_suite(lat2, trials, cfg.seed);

  // Pointwise log-interpolation constants at both resolutions.
  double bg1 = 0.0, bg2 = 0.0;
  {
    PhysicalProbe p1(lat), p2(lat2);
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = cfg.seed + 7919ULL * static_cast<std::uint64_t>(t) + 13ULL;
      bg1 = std::max(bg1, brezis_gallouet(random_smooth_field(lat, s, 4.0, 1.0), p1).ratio);
      bg2 = std::max(bg2, brezis_gallouet(random_smooth_field(lat2, s, 4.0, 1.0), p2).ratio);
    }
  }
  // Filter deviation operator norm, including an equality case.
  const FilterDeviationCheck l10_eq = filter_deviation_check(*lat, 1.0 / std::sqrt(lat->lambda1()));
  const FilterDeviationCheck l10_gen = filter_deviation_check(*lat, 0.123);

  nlohmann::json out;
  out["battery"] = nlohmann::json::parse(rep.to_json());
  out["battery_refined"] = nlohmann::json::parse(rep2.to_json());
  out["pointwise_log_constant"] = {{"coarse", bg1},
                                   {"refined", bg2},
                                   {"relative_change", std::abs(bg2 - bg1) / bg1}};
  out["filter_deviation"] = {{"equality_norm", l10_eq.operator_norm},
                             {"generic_norm", l10_gen.operator_norm},
                             {"bound_holds", l10_eq.bound_holds && l10_gen.bound_holds}};

  const double worst = std::max(rep.worst_identity(), rep2.worst_identity());
  const double bg_change = std::abs(bg2 - bg1) / bg1;
  bool constants_finite = std::isfinite(bg1) && std::isfinite(bg2);
  for (double c : {rep.c_interpolated, rep.c_linf_advector, rep.c_grad_linf, rep.c_linf_test, rep.c_rotational, rep.c_h2_pairing,
                   rep.c_log_advector, rep.c_log_test, rep.c_ladyzhenskaya}) {
    constants_finite = constants_finite && std::isfinite(c) && c > 0.0;
  }
  const bool pass = worst <= 1e-12 && constants_finite && bg_change < 0.20 &&
                    l10_eq.bound_holds && l10_gen.bound_holds &&
                    std::abs(l10_eq.operator_norm - 0.5) <= 1e-12;
  out["pass"] = pass;
  out["worst_identity"] = worst;
  out["seed"] = cfg.seed;

  const fs::path report_path = out_dir / "identities.json";
  write_file(report_path, out.dump(2) + "\n");
  manifest.add_output(report_path);
  manifest.finish(pass ? "complete" : "assertion-failure");

  if (!pass) {
    std::cerr << "identity battery failed: worst identity violation " << worst << " (seed "
              << cfg.seed << "); see " << report_path << "\n";
    return kAssertionFailure;
  }
  std::cout << "identities pass: worst violation " << worst << ", outputs in " << out_dir
            << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D periodic spectral solver for Navier-Stokes and its alpha regularizations"};
  app.require_subcommand(1);

  std::string config;
  std::string out = "out";
  int parallel = 0;
  bool svg = false;
  int trials = 100;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "config file (JSON)")->required();
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--seed", seed, "override the config seed");
  };

  CLI::App* run = app.add_subcommand("run", "integrate one trajectory and emit its bound report");
  add_common(run);

  CLI::App* sweep = app.add_subcommand("sweep", "convergence sweep (alpha|galerkin|combined)");
  std::string kind;
  sweep->add_option("kind", kind, "alpha|galerkin|combined")->required();
  add_common(sweep);
  sweep->add_option("--parallel", parallel, "sweep-point parallelism (default: cores)");
  sweep->add_flag("--svg", svg, "emit a log-log plot");

  CLI::App* ident = app.add_subcommand("identities", "bilinear identity and inequality battery");
  add_common(ident);
  ident->add_option("--trials", trials, "random fields per battery (default 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config, out, seed);
    if (sweep->parsed()) return cmd_sweep(kind, config, out, svg, parallel, seed);
    if (ident->parsed()) return cmd_identities(config, out, trials);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertionFailure;
  }
  return kConfigError;
}
