// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "alphaflow/models.hpp"

namespace alphaflow {

/// Raised when the state stops being finite; carries the offending step.
class NumericError : public std::runtime_error {
 public:
  NumericError(long step, double t);
  long step() const { return step_; }
  double time() const { return t_; }

 private:
  long step_;
  double t_;
};

struct StepperConfig {
  double dt = 1e-3;
  long max_steps = 50'000'000;
  /// Richardson gate tolerance, relative to the solution scale.
  double temporal_tol = 1e-9;
};

/// Time integrals accumulated with the RK4 stage weights (globally 4th
/// order), so dissipation budgets sit far below the monitor tolerances.
struct RunningIntegrals {
  double l2_sq = 0.0;   // int |u|^2
  double h1_sq = 0.0;   // int ||u||^2
  double h2_sq = 0.0;   // int |Au|^2
  double a32_sq = 0.0;  // int |A^{3/2} u|^2
  double f_u = 0.0;     // int (f, u)
  double f_au = 0.0;    // int (f, Au)
};

struct SampleRecord {
  double t = 0.0;
  SpectralVelocity u;
  double l2 = 0.0, h1 = 0.0, h2 = 0.0;
  double energy = 0.0;  // model quadratic form
  /// |Delta energy + int dissipation - int production| / energy scale over
  /// the preceding sample interval; 0 at the first sample.
  double balance_residual = 0.0;
  RunningIntegrals integrals;
};

struct StepStats {
  long steps = 0;
  double dt = 0.0;
  double dt_nu_lambda_max = 0.0;  // stiffness diagnostic
};

struct Trajectory {
  std::vector<SampleRecord> samples;
  StepStats stats;
};

using SampleCallback = std::function<void(const SampleRecord&)>;

/// Uniform sample grid 0 = t_0 < ... < t_n = t_end with n = sample_count.
std::vector<double> uniform_samples(double t_end, int sample_count);

/// Integrates du/dt = -nu A u + G(u) from t0 to t1 with the viscous part
/// applied exactly per mode and G by classical RK4 on the transformed
/// variable. Steps land exactly on the requested sample times; the callback
/// fires at every sample time (including t0). Deterministic.
StepStats advance(SpectralVelocity& state, ModelRhs& rhs, const StepperConfig& sc, double t0,
                  double t1, std::span<const double> sample_times, const SampleCallback& cb);

/// Builds lattice, initial state and rhs from the config and integrates over
/// [0, t_end], collecting all samples.
Trajectory run_simulation(const SimConfig& cfg);

struct RichardsonResult {
  double dt_used = 0.0;
  double error_estimate = 0.0;  // sup-in-time L2 difference against the dt/2 rerun
  double scale = 0.0;           // sup-in-time |u| of the base run
  bool pass = false;
};

/// Step-halving self-convergence gate; the run is declared time-resolved
/// when the rerun at dt/2 stays within temporal_tol * scale of it.
RichardsonResult richardson_check(const SimConfig& cfg, double temporal_tol = 1e-9);
/// Same gate reusing an already computed base trajectory.
RichardsonResult richardson_check(const SimConfig& cfg, const Trajectory& base,
                                  double temporal_tol = 1e-9);

/// Versioned trajectory table: t, |u|, ||u||, |Au|, model energy, balance
/// residual. Byte-deterministic for a given trajectory.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace alphaflow
