// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

namespace alphaflow {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void parallel_for(std::size_t n, int parallelism, const std::function<void(std::size_t)>& fn) {
  if (parallelism <= 0) {
    parallelism = static_cast<int>(std::thread::hardware_concurrency());
    if (parallelism <= 0) parallelism = 1;
  }
  const int workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double sup_error(const Trajectory& ref, const Trajectory& run) {
  double e = 0.0;
  const std::size_t n = std::min(ref.samples.size(), run.samples.size());
  for (std::size_t i = 0; i < n; ++i) {
    e = std::max(e, l2_distance(ref.samples[i].u, run.samples[i].u));
  }
  return e;
}

struct GatedRun {
  Trajectory traj;
  RichardsonResult richardson;
  DataNorms data;
};

GatedRun gated_run(const SimConfig& cfg, double richardson_tol) {
  GatedRun out;
  out.traj = run_simulation(cfg);
  out.richardson = richardson_check(cfg, out.traj, richardson_tol);
  if (!out.richardson.pass) {
    throw ResolutionError("time step not resolved: halving dt moves the solution by " +
                          fmt17(out.richardson.error_estimate) + " against scale " +
                          fmt17(out.richardson.scale));
  }
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  out.data = data_norms(out.traj.samples.front().u, make_forcing(lat, cfg), cfg.t_end);
  return out;
}

// Smallest complete-shell cutoff of the lattice at or above the target.
double shell_at_or_above(const Lattice& lat, double target) {
  const double next = lat.next_eigenvalue_above(target * (1.0 - 1e-12) - lat.lambda1() * 0.5);
  const double cutoff = next >= target ? next : lat.next_eigenvalue_above(target);
  if (!lat.valid_cutoff(cutoff)) {
    throw std::invalid_argument("reference cutoff exceeds the lattice's complete shells");
  }
  return cutoff;
}

bool nonincreasing(const std::vector<SweepPoint>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].error > pts[i - 1].error * (1.0 + 1e-12) + 1e-300) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<SweepPoint>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].error == 0.0 && pts[i - 1].error == 0.0) continue;  // exact-solution runs
    if (!(pts[i].error < pts[i - 1].error)) return false;
  }
  return true;
}

RateFit fit_points(const std::vector<SweepPoint>& pts, const std::string& form, bool squared) {
  std::vector<double> xs, es;
  for (const auto& p : pts) {
    xs.push_back(p.fit_x);
    es.push_back(squared ? p.error * p.error : p.error);
  }
  bool all_zero = true;
  for (double e : es) all_zero = all_zero && e == 0.0;
  RateFit fit;
  if (all_zero) {
    fit.degenerate = true;
    fit.form = form;
    return fit;
  }
  fit = fit_rate(xs, es);
  fit.form = form;
  return fit;
}

}  // namespace

RateFit fit_rate(std::span<const double> x, std::span<const double> e) {
  if (x.size() != e.size()) throw std::invalid_argument("fit_rate: size mismatch");
  RateFit fit;
  std::vector<double> lx, le;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument("fit_rate: x values must be positive");
    if (e[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      le.push_back(std::log(e[i]));
    } else {
      fit.zeros_excluded = true;
    }
  }
  if (lx.size() < 4) {
    if (lx.empty()) {
      fit.degenerate = true;
      return fit;
    }
    throw std::invalid_argument("fit_rate: fewer than 4 usable points");
  }
  const auto n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += le[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * le[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissae");
  fit.order = (n * sxy - sx * sy) / denom;
  const double logc = (sy - fit.order * sx) / n;
  fit.prefactor = std::exp(logc);
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = le[i] - logc - fit.order * lx[i];
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  fit.points_used = static_cast<int>(lx.size());
  return fit;
}

bool SweepResult::pass() const {
  return monotone && bounds_pass && monitors_pass && richardson_pass && fit_ok() &&
         (proxy_rel_change < 0.0 || proxy_rel_change < 0.01);
}

std::string SweepResult::csv() const {
  std::string out = "# alphaflow sweep csv v1 kind=" + kind + " model=" + model + "\n";
  out += "value,alpha,lambda_m,lambda_m1,m,error,error_sq,bound_sq,ratio_sq,fit_x\n";
  for (const auto& p : points) {
    out += fmt17(p.value) + "," + fmt17(p.alpha) + "," + fmt17(p.lambda_m) + "," +
           fmt17(p.lambda_m1) + "," + std::to_string(p.m) + "," + fmt17(p.error) + "," +
           fmt17(p.error * p.error) + "," + fmt17(p.bound_sq) + "," + fmt17(p.ratio_sq) + "," +
           fmt17(p.fit_x) + "\n";
  }
  return out;
}

std::string SweepResult::json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"value", p.value},
                   {"alpha", p.alpha},
                   {"lambda_m", p.lambda_m},
                   {"lambda_m1", p.lambda_m1},
                   {"m", p.m},
                   {"error", p.error},
                   {"bound_sq", p.bound_sq},
                   {"ratio_sq", p.ratio_sq},
                   {"fit_x", p.fit_x},
                   {"monitors_pass", p.monitors_pass},
                   {"richardson_error", p.richardson_error}});
  }
  nlohmann::json j{
      {"kind", kind},
      {"model", model},
      {"points", pts},
      {"fit",
       {{"order", fit.order},
        {"prefactor", fit.prefactor},
        {"residual", fit.residual},
        {"points_used", fit.points_used},
        {"zeros_excluded", fit.zeros_excluded},
        {"degenerate", fit.degenerate},
        {"form", fit.form}}},
      {"gates",
       {{"fit_ok", fit_ok()},
        {"order_threshold", order_threshold},
        {"monotone", monotone},
        {"bounds_pass", bounds_pass},
        {"monitors_pass", monitors_pass},
        {"richardson_pass", richardson_pass},
        {"proxy_rel_change", proxy_rel_change}}},
      {"reference", {{"cutoff", reference_cutoff}, {"resolution", reference_resolution}}},
      {"calibration", nlohmann::json::parse(calibration.to_json())},
      {"pass", pass()},
  };
  return j.dump(2);
}

SweepResult alpha_sweep(const SweepSpec& spec, ModelKind model, const Calibration& cal) {
  if (model == ModelKind::NSE) {
    throw std::invalid_argument("alpha_sweep: pick one of the four regularization models");
  }
  if (spec.values.empty()) throw std::invalid_argument("alpha_sweep: empty value list");

  SimConfig base = spec.base;
  base.model = model;
  // Pin the initial condition to the base lattice so every run, including
  // the refined reference, integrates the same element of H.
  if (base.initial.kind == InitialConditionSpec::Kind::RandomSmooth &&
      base.initial.resolution == 0) {
    base.initial.resolution = base.resolution;
  }
  if (base.forcing.kind != ForcingSpec::Kind::Zero && base.forcing.resolution == 0) {
    base.forcing.resolution = base.resolution;
  }

  std::vector<double> alphas = spec.values;
  std::sort(alphas.rbegin(), alphas.rend());
  const double two_pi = 2.0 * std::numbers::pi;
  for (double a : alphas) {
    if (!(a > 0.0) || base.box_length / (two_pi * a) < 1.0) {
      throw HypothesisError("alpha_sweep: need 0 < alpha <= L/(2 pi), got " + fmt17(a));
    }
  }

  SimConfig ref_cfg = base;
  ref_cfg.model = ModelKind::NSE;
  ref_cfg.alpha = 0.0;
  ref_cfg.resolution = base.resolution * spec.reference_factor;
  ref_cfg.galerkin_cutoff = 0.0;
  const GatedRun ref = gated_run(ref_cfg, spec.richardson_tol);

  SweepResult res;
  res.kind = "alpha";
  res.model = model_name(model);
  res.order_threshold = 0.9;
  res.calibration = cal;
  res.reference_resolution = ref_cfg.resolution;
  res.reference_cutoff = 0.0;
  res.proxy_rel_change = -1.0;
  res.points.resize(alphas.size());
  res.richardson_pass = true;
  res.monitors_pass = true;
  res.bounds_pass = true;

  auto lat = Lattice::create(base.box_length, base.resolution);
  const double cutoff = base.effective_cutoff(*lat);
  const double lambda_m = lat->last_eigenvalue_at_or_below(cutoff);
  const double lambda_m1 = lat->next_eigenvalue_above(cutoff);

  parallel_for(alphas.size(), spec.parallelism, [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.alpha = alphas[i];
    const GatedRun run = gated_run(cfg, spec.richardson_tol);
    const BoundConstants k = compute_constants(cfg, run.data, lambda_m, lambda_m1, cal);
    if (!k.alpha_hypothesis_ok) {
      throw HypothesisError("alpha_sweep: L/(2 pi alpha) >= 1 fails at alpha = " +
                            fmt17(cfg.alpha));
    }
    SweepPoint p;
    p.value = cfg.alpha;
    p.alpha = cfg.alpha;
    p.lambda_m = lambda_m;
    p.lambda_m1 = lambda_m1;
    p.m = lat->modes_within(cutoff);
    p.error = sup_error(ref.traj, run.traj);
    const bool smoothing =
        model == ModelKind::LerayAlpha || model == ModelKind::SimplifiedBardina;
    p.bound_sq = smoothing ? k.eps_sq : k.eps_tilde_sq;
    p.ratio_sq = p.error * p.error / p.bound_sq;
    p.fit_x = cfg.alpha * std::sqrt(1.0 + std::log(cfg.box_length / (two_pi * cfg.alpha)));
    p.monitors_pass = monitor_apriori(run.traj, cfg, k).pass;
    p.richardson_error = run.richardson.error_estimate;
    res.points[i] = p;
  });

  for (const auto& p : res.points) {
    res.bounds_pass = res.bounds_pass && p.error * p.error <= p.bound_sq;
    res.monitors_pass = res.monitors_pass && p.monitors_pass;
  }
  res.monotone = nonincreasing(res.points);
  res.fit = fit_points(res.points, "alpha*(1+log(L/(2 pi alpha)))^{1/2}", false);
  return res;
}

namespace {

// Shared scaffolding for the two cutoff sweeps: reference trajectories at a
// refined cutoff plus the optional doubled-reference validity check.
struct CutoffReference {
  Trajectory traj;
  Trajectory traj2;  // doubled cutoff; empty when proxy_check is off
  double cutoff = 0.0;
  bool has_proxy = false;
};

CutoffReference make_cutoff_reference(const SweepSpec& spec, const SimConfig& base,
                                      const Lattice& lat, double max_cutoff, ModelKind model) {
  CutoffReference ref;
  ref.cutoff = shell_at_or_above(lat, spec.reference_factor * max_cutoff);
  SimConfig rc = base;
  rc.model = model;
  if (model == ModelKind::NSE) rc.alpha = 0.0;
  rc.galerkin_cutoff = ref.cutoff;
  ref.traj = gated_run(rc, spec.richardson_tol).traj;
  if (spec.proxy_check) {
    SimConfig rc2 = rc;
    rc2.galerkin_cutoff = shell_at_or_above(lat, 2.0 * ref.cutoff);
    ref.traj2 = run_simulation(rc2);
    ref.has_proxy = true;
  }
  return ref;
}

}  // namespace

SweepResult galerkin_sweep(const SweepSpec& spec, const Calibration& cal) {
  SimConfig base = spec.base;
  if (base.model != ModelKind::LerayAlpha) {
    throw std::invalid_argument("galerkin_sweep: the truncation study targets the smoothed"
                                " advection model (leray_alpha)");
  }
  if (!(base.alpha > 0.0)) throw std::invalid_argument("galerkin_sweep: alpha must be positive");
  if (spec.values.empty()) throw std::invalid_argument("galerkin_sweep: empty cutoff list");
  if (base.initial.kind == InitialConditionSpec::Kind::RandomSmooth &&
      base.initial.resolution == 0) {
    base.initial.resolution = base.resolution;
  }

  auto lat = Lattice::create(base.box_length, base.resolution);
  std::vector<double> cutoffs = spec.values;
  std::sort(cutoffs.begin(), cutoffs.end());
  for (double c : cutoffs) {
    if (!lat->valid_cutoff(c)) {
      throw std::invalid_argument("galerkin_sweep: cutoff " + fmt17(c) +
                                  " is not at a complete shell boundary");
    }
    const double lm1 = lat->next_eigenvalue_above(c);
    if (base.alpha * base.alpha > 1.0 / lm1 * (1.0 + 1e-12)) {
      throw HypothesisError("galerkin_sweep: alpha^2 <= 1/lambda_{m+1} fails at cutoff " +
                            fmt17(c));
    }
  }

  const CutoffReference ref =
      make_cutoff_reference(spec, base, *lat, cutoffs.back(), ModelKind::LerayAlpha);

  SweepResult res;
  res.kind = "galerkin";
  res.model = model_name(base.model);
  res.order_threshold = 1.0;
  res.calibration = cal;
  res.reference_resolution = base.resolution;
  res.reference_cutoff = ref.cutoff;
  res.points.resize(cutoffs.size());
  res.richardson_pass = true;

  double proxy_change = ref.has_proxy ? 0.0 : -1.0;
  std::mutex proxy_mu;

  parallel_for(cutoffs.size(), spec.parallelism, [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.galerkin_cutoff = cutoffs[i];
    const GatedRun run = gated_run(cfg, spec.richardson_tol);
    const double lambda_m = lat->last_eigenvalue_at_or_below(cutoffs[i]);
    const double lambda_m1 = lat->next_eigenvalue_above(cutoffs[i]);
    const BoundConstants k = compute_constants(cfg, run.data, lambda_m, lambda_m1, cal);
    if (!k.galerkin_hypothesis_ok || !k.alpha_hypothesis_ok) {
      throw HypothesisError("galerkin_sweep: hypothesis failure at cutoff " + fmt17(cutoffs[i]));
    }
    SweepPoint p;
    p.value = cutoffs[i];
    p.alpha = cfg.alpha;
    p.lambda_m = lambda_m;
    p.lambda_m1 = lambda_m1;
    p.m = lat->modes_within(cutoffs[i]);
    p.error = sup_error(ref.traj, run.traj);
    p.bound_sq = k.e_sq;
    p.ratio_sq = p.error * p.error / p.bound_sq;
    p.fit_x = (1.0 / lambda_m1) * std::sqrt(1.0 + std::log(lambda_m1 / k.lambda1));
    p.monitors_pass = monitor_apriori(run.traj, cfg, k).pass;
    p.richardson_error = run.richardson.error_estimate;
    res.points[i] = p;
    if (ref.has_proxy) {
      const double e2 = sup_error(ref.traj2, run.traj);
      const double rel = p.error > 0.0 ? std::abs(e2 - p.error) / p.error : 0.0;
      std::lock_guard<std::mutex> lock(proxy_mu);
      proxy_change = std::max(proxy_change, rel);
    }
  });

  res.proxy_rel_change = proxy_change;
  res.bounds_pass = true;
  res.monitors_pass = true;
  for (const auto& p : res.points) {
    res.bounds_pass = res.bounds_pass && p.error * p.error <= p.bound_sq;
    res.monitors_pass = res.monitors_pass && p.monitors_pass;
  }
  res.monotone = strictly_decreasing(res.points);
  res.fit =
      fit_points(res.points, "lambda_{m+1}^{-1}(1+log(lambda_{m+1}/lambda_1))^{1/2}", false);
  return res;
}

SweepResult combined_sweep(const SweepSpec& spec, const Calibration& cal) {
  SimConfig base = spec.base;
  base.model = ModelKind::LerayAlpha;
  if (spec.values.empty()) throw std::invalid_argument("combined_sweep: empty cutoff list");
  if (base.initial.kind == InitialConditionSpec::Kind::RandomSmooth &&
      base.initial.resolution == 0) {
    base.initial.resolution = base.resolution;
  }

  auto lat = Lattice::create(base.box_length, base.resolution);
  std::vector<double> cutoffs = spec.values;
  std::sort(cutoffs.begin(), cutoffs.end());
  const double two_pi = 2.0 * std::numbers::pi;
  for (double c : cutoffs) {
    if (!lat->valid_cutoff(c)) {
      throw std::invalid_argument("combined_sweep: cutoff " + fmt17(c) +
                                  " is not at a complete shell boundary");
    }
  }

  const CutoffReference ref =
      make_cutoff_reference(spec, base, *lat, cutoffs.back(), ModelKind::NSE);

  SweepResult res;
  res.kind = "combined";
  res.model = model_name(ModelKind::LerayAlpha);
  res.order_threshold = 1.0;
  res.calibration = cal;
  res.reference_resolution = base.resolution;
  res.reference_cutoff = ref.cutoff;
  res.points.resize(cutoffs.size());
  res.richardson_pass = true;

  double proxy_change = ref.has_proxy ? 0.0 : -1.0;
  std::mutex proxy_mu;

  parallel_for(cutoffs.size(), spec.parallelism, [&](std::size_t i) {
    const double lambda_m = lat->last_eigenvalue_at_or_below(cutoffs[i]);
    const double lambda_m1 = lat->next_eigenvalue_above(cutoffs[i]);
    SimConfig cfg = base;
    cfg.galerkin_cutoff = cutoffs[i];
    cfg.alpha = two_pi / (lambda_m1 * cfg.box_length);
    const GatedRun run = gated_run(cfg, spec.richardson_tol);
    const BoundConstants k = compute_constants(cfg, run.data, lambda_m, lambda_m1, cal);
    if (!k.combined_hypothesis_ok) {
      throw HypothesisError("combined_sweep: hypothesis failure at cutoff " + fmt17(cutoffs[i]));
    }
    SweepPoint p;
    p.value = cutoffs[i];
    p.alpha = cfg.alpha;
    p.lambda_m = lambda_m;
    p.lambda_m1 = lambda_m1;
    p.m = lat->modes_within(cutoffs[i]);
    p.error = sup_error(ref.traj, run.traj);
    p.bound_sq = k.combined_bound_sq;
    p.ratio_sq = p.error * p.error / p.bound_sq;
    const double md = static_cast<double>(p.m);
    p.fit_x = std::log(md + 1.0) / ((md + 1.0) * (md + 1.0));
    p.monitors_pass = monitor_apriori(run.traj, cfg, k).pass;
    p.richardson_error = run.richardson.error_estimate;
    res.points[i] = p;
    if (ref.has_proxy) {
      const double e2 = sup_error(ref.traj2, run.traj);
      const double rel = p.error > 0.0 ? std::abs(e2 - p.error) / p.error : 0.0;
      std::lock_guard<std::mutex> lock(proxy_mu);
      proxy_change = std::max(proxy_change, rel);
    }
  });

  res.proxy_rel_change = proxy_change;
  res.bounds_pass = true;
  res.monitors_pass = true;
  for (const auto& p : res.points) {
    res.bounds_pass = res.bounds_pass && p.error * p.error <= p.bound_sq;
    res.monitors_pass = res.monitors_pass && p.monitors_pass;
  }
  res.monotone = strictly_decreasing(res.points);
  // Squared errors against the mode-count variable.
  {
    std::vector<double> xs, es;
    for (const auto& p : res.points) {
      xs.push_back(p.fit_x);
      es.push_back(p.error * p.error);
    }
    bool all_zero = true;
    for (double e : es) all_zero = all_zero && e == 0.0;
    if (all_zero) {
      res.fit.degenerate = true;
    } else {
      res.fit = fit_rate(xs, es);
    }
    res.fit.form = "squared error vs (1/(m+1))^2 log(m+1)";
  }
  return res;
}

}  // namespace alphaflow
