// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>

namespace alphaflow {

NumericError::NumericError(long step, double t)
    : std::runtime_error("non-finite state at step " + std::to_string(step) + ", t = " +
                         std::to_string(t)),
      step_(step),
      t_(t) {}

std::vector<double> uniform_samples(double t_end, int sample_count) {
  std::vector<double> out(static_cast<std::size_t>(sample_count) + 1);
  for (int i = 0; i <= sample_count; ++i) {
    out[static_cast<std::size_t>(i)] = t_end * static_cast<double>(i) / sample_count;
  }
  out.back() = t_end;
  return out;
}

namespace {

struct ExpTable {
  std::vector<double> full;  // exp(-nu lambda h)
  std::vector<double> half;  // exp(-nu lambda h/2)
};

ExpTable make_exp_table(const Lattice& lat, double nu, double h) {
  ExpTable t;
  t.full.resize(lat.mode_count());
  t.half.resize(lat.mode_count());
  for (std::size_t i = 0; i < lat.mode_count(); ++i) {
    t.full[i] = std::exp(-nu * lat.lambda(i) * h);
    t.half[i] = std::exp(-nu * lat.lambda(i) * 0.5 * h);
  }
  return t;
}

struct StageSums {
  double l2 = 0.0, h1 = 0.0, h2 = 0.0, a32 = 0.0, fu = 0.0, fau = 0.0;
};

StageSums stage_quadratics(const SpectralVelocity& u, const SpectralVelocity& f) {
  const Lattice& lat = u.lattice();
  const double L2 = lat.box_length() * lat.box_length();
  StageSums s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m2 = std::norm(u.x(i)) + std::norm(u.y(i));
    const double l = lat.lambda(i);
    s.l2 += m2;
    s.h1 += l * m2;
    s.h2 += l * l * m2;
    s.a32 += l * l * l * m2;
    const double fdotu = f.x(i).real() * u.x(i).real() + f.x(i).imag() * u.x(i).imag() +
                         f.y(i).real() * u.y(i).real() + f.y(i).imag() * u.y(i).imag();
    s.fu += fdotu;
    s.fau += l * fdotu;
  }
  s.l2 *= L2;
  s.h1 *= L2;
  s.h2 *= L2;
  s.a32 *= L2;
  s.fu *= L2;
  s.fau *= L2;
  return s;
}

// One integrating-factor RK4 step over [t, t+h]; accumulates the running
// integrals with the same stage weights.
void step_ifrk4(SpectralVelocity& u, ModelRhs& rhs, const ExpTable& et, double h, double /*t*/,
                RunningIntegrals& acc, SpectralVelocity& g1, SpectralVelocity& gmid,
                SpectralVelocity& g4, SpectralVelocity& us, const SpectralVelocity& f) {
  const std::size_t n = u.size();
  const double w = h / 6.0;

  auto add = [&](const StageSums& s, double weight) {
    acc.l2_sq += weight * s.l2;
    acc.h1_sq += weight * s.h1;
    acc.h2_sq += weight * s.h2;
    acc.a32_sq += weight * s.a32;
    acc.f_u += weight * s.fu;
    acc.f_au += weight * s.fau;
  };

  rhs.nonlinear(u, g1);
  add(stage_quadratics(u, f), w);

  // u2 = E(h/2) (u + h/2 g1)
  for (std::size_t i = 0; i < n; ++i) {
    us.x(i) = et.half[i] * (u.x(i) + 0.5 * h * g1.x(i));
    us.y(i) = et.half[i] * (u.y(i) + 0.5 * h * g1.y(i));
  }
  rhs.nonlinear(us, gmid);
  add(stage_quadratics(us, f), 2.0 * w);

  // u3 = E(h/2) u + h/2 g2
  for (std::size_t i = 0; i < n; ++i) {
    us.x(i) = et.half[i] * u.x(i) + 0.5 * h * gmid.x(i);
    us.y(i) = et.half[i] * u.y(i) + 0.5 * h * gmid.y(i);
  }
  rhs.nonlinear(us, g4);  // g4 temporarily holds g3
  add(stage_quadratics(us, f), 2.0 * w);

  // u4 = E(h) u + h E(h/2) g3; fold g3 into gmid as g2 + g3.
  for (std::size_t i = 0; i < n; ++i) {
    us.x(i) = et.full[i] * u.x(i) + h * et.half[i] * g4.x(i);
    us.y(i) = et.full[i] * u.y(i) + h * et.half[i] * g4.y(i);
    gmid.x(i) += g4.x(i);
    gmid.y(i) += g4.y(i);
  }
  rhs.nonlinear(us, g4);
  add(stage_quadratics(us, f), w);

  // u <- E(h) u + h/6 (E(h) g1 + 2 E(h/2)(g2+g3) + g4)
  for (std::size_t i = 0; i < n; ++i) {
    u.x(i) = et.full[i] * u.x(i) +
             w * (et.full[i] * g1.x(i) + 2.0 * et.half[i] * gmid.x(i) + g4.x(i));
    u.y(i) = et.full[i] * u.y(i) +
             w * (et.full[i] * g1.y(i) + 2.0 * et.half[i] * gmid.y(i) + g4.y(i));
  }
}

}  // namespace

StepStats advance(SpectralVelocity& state, ModelRhs& rhs, const StepperConfig& sc, double t0,
                  double t1, std::span<const double> sample_times, const SampleCallback& cb) {
  if (!(t1 > t0)) throw std::invalid_argument("advance: t1 must exceed t0");
  if (!(sc.dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
  const Lattice& lat = rhs.lattice();
  const double nu = rhs.config().nu;
  // Pairings (f, u) in the running integrals use the unfiltered P_m f.
  SpectralVelocity f_raw = make_forcing(rhs.lattice_ptr(), rhs.config());

  StepStats stats;
  stats.dt = sc.dt;
  double lambda_max = 0.0;
  for (std::size_t i = 0; i < lat.mode_count(); ++i) lambda_max = std::max(lambda_max, lat.lambda(i));
  stats.dt_nu_lambda_max = sc.dt * nu * lambda_max;

  // Exponential tables per distinct step size (the trailing step of each
  // sample interval is usually shorter).
  std::map<double, ExpTable> tables;
  auto table_for = [&](double h) -> const ExpTable& {
    auto it = tables.find(h);
    if (it == tables.end()) it = tables.emplace(h, make_exp_table(lat, nu, h)).first;
    return it->second;
  };

  SpectralVelocity g1(rhs.lattice_ptr()), gmid(rhs.lattice_ptr()), g4(rhs.lattice_ptr()),
      us(rhs.lattice_ptr());
  RunningIntegrals acc;

  EnergyBalance prev_balance = rhs.energy_balance(state);
  RunningIntegrals prev_acc;
  double energy_scale = std::max(std::abs(prev_balance.energy), 1e-300);

  auto emit = [&](double t, bool first) {
    SampleRecord rec;
    rec.t = t;
    rec.u = state;
    rec.l2 = norm_l2(state);
    rec.h1 = norm_h1(state);
    rec.h2 = norm_h2(state);
    const EnergyBalance eb = rhs.energy_balance(state);
    rec.energy = eb.energy;
    rec.integrals = acc;
    if (!first) {
      const SimConfig& cfg = rhs.config();
      const double a2 = cfg.alpha * cfg.alpha;
      double diss = 0.0, prod = 0.0;
      switch (cfg.model) {
        case ModelKind::NSE:
          diss = 2.0 * cfg.nu * (acc.h1_sq - prev_acc.h1_sq);
          prod = 2.0 * (acc.f_u - prev_acc.f_u);
          break;
        case ModelKind::LerayAlpha:
        case ModelKind::SimplifiedBardina:
          diss = 2.0 * cfg.nu *
                 ((acc.h2_sq - prev_acc.h2_sq) + a2 * (acc.a32_sq - prev_acc.a32_sq));
          prod = 2.0 * (acc.f_au - prev_acc.f_au);
          break;
        case ModelKind::NSAlpha:
        case ModelKind::ModifiedLerayAlpha:
          diss = 2.0 * cfg.nu *
                 ((acc.h1_sq - prev_acc.h1_sq) + a2 * (acc.h2_sq - prev_acc.h2_sq));
          prod = 2.0 * (acc.f_u - prev_acc.f_u);
          break;
      }
      energy_scale = std::max(energy_scale, std::abs(eb.energy));
      rec.balance_residual = std::abs(eb.energy - prev_balance.energy + diss - prod) / energy_scale;
    }
    prev_balance = eb;
    prev_acc = acc;
    if (cb) cb(rec);
  };

  // Sample times inside (t0, t1], ascending; t0 itself is emitted first.
  std::vector<double> stops(sample_times.begin(), sample_times.end());
  std::sort(stops.begin(), stops.end());
  if (stops.empty() || std::abs(stops.back() - t1) > 1e-12 * std::max(1.0, std::abs(t1))) {
    throw std::invalid_argument("advance: sample grid must end at t1");
  }
  emit(t0, true);

  long step_count = 0;
  double t = t0;
  for (double stop : stops) {
    if (stop <= t0 || stop > t1 * (1.0 + 1e-15)) continue;
    while (t < stop) {
      const double remaining = stop - t;
      const double h = remaining <= sc.dt * (1.0 + 1e-12) ? remaining : sc.dt;
      step_ifrk4(state, rhs, table_for(h), h, t, acc, g1, gmid, g4, us, f_raw);
      ++step_count;
      if (step_count > sc.max_steps) {
        throw std::runtime_error("advance: step-count overflow");
      }
      // A cheap per-step finiteness proxy; the full check runs per sample.
      if (!std::isfinite(std::norm(state.x(0)))) throw NumericError(step_count, t);
      t = (h == remaining) ? stop : t + h;
    }
    t = stop;
    if (!state.finite()) throw NumericError(step_count, t);
    emit(t, false);
  }
  stats.steps = step_count;
  return stats;
}

Trajectory run_simulation(const SimConfig& cfg) {
  cfg.validate();
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  SpectralVelocity u = make_initial_condition(lat, cfg);
  ModelRhs rhs(lat, cfg);
  StepperConfig sc;
  sc.dt = cfg.dt;

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(cfg.sample_count) + 1);
  const auto samples = uniform_samples(cfg.t_end, cfg.sample_count);
  traj.stats = advance(u, rhs, sc, 0.0, cfg.t_end, samples,
                       [&](const SampleRecord& rec) { traj.samples.push_back(rec); });
  return traj;
}

RichardsonResult richardson_check(const SimConfig& cfg, const Trajectory& base,
                                  double temporal_tol) {
  SimConfig fine = cfg;
  fine.dt = 0.5 * cfg.dt;

  RichardsonResult out;
  out.dt_used = cfg.dt;
  for (const auto& s : base.samples) out.scale = std::max(out.scale, s.l2);

  auto lat = Lattice::create(fine.box_length, fine.resolution);
  SpectralVelocity u = make_initial_condition(lat, fine);
  ModelRhs rhs(lat, fine);
  StepperConfig sc;
  sc.dt = fine.dt;
  const auto samples = uniform_samples(fine.t_end, fine.sample_count);
  std::size_t idx = 0;
  advance(u, rhs, sc, 0.0, fine.t_end, samples, [&](const SampleRecord& rec) {
    if (idx < base.samples.size()) {
      out.error_estimate = std::max(out.error_estimate, l2_distance(rec.u, base.samples[idx].u));
    }
    ++idx;
  });
  out.pass = out.error_estimate <= temporal_tol * std::max(out.scale, 1e-300);
  return out;
}

RichardsonResult richardson_check(const SimConfig& cfg, double temporal_tol) {
  const Trajectory base = run_simulation(cfg);
  return richardson_check(cfg, base, temporal_tol);
}

std::string trajectory_csv(const Trajectory& traj) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::string out = "# alphaflow trajectory csv v1\n";
  out += "t,l2,h1,h2,energy,balance_residual\n";
  for (const auto& s : traj.samples) {
    out += fmt(s.t) + "," + fmt(s.l2) + "," + fmt(s.h1) + "," + fmt(s.h2) + "," + fmt(s.energy) +
           "," + fmt(s.balance_residual) + "\n";
  }
  return out;
}

}  // namespace alphaflow
