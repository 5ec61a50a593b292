// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphaflow/bounds.hpp"
#include "alphaflow/integrator.hpp"

namespace alphaflow {

/// A smallness hypothesis of the targeted estimate fails for a requested
/// parameter; the run is refused rather than silently computed.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Richardson step-halving gate failed; the time step must shrink.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares power law E = C x^p in log-log coordinates.
struct RateFit {
  double order = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // rms of log-residuals
  int points_used = 0;
  bool zeros_excluded = false;
  /// No fit possible (fewer than 4 strictly positive errors), e.g. exact
  /// solutions where every swept error vanishes.
  bool degenerate = false;
  std::string form;  // description of the x variable
};

/// Fits over pairs with e > 0; throws when x has nonpositive entries or
/// fewer than 4 usable pairs remain while any are nonzero.
RateFit fit_rate(std::span<const double> x, std::span<const double> e);

struct SweepSpec {
  SimConfig base;
  /// Swept values: alpha for the model sweep (any order, deduplicated and
  /// sorted descending), eigenvalue cutoffs for the Galerkin and combined
  /// sweeps (sorted ascending).
  std::vector<double> values;
  /// Reference refinement: lattice factor for the alpha sweep, cutoff factor
  /// for the Galerkin/combined sweeps.
  int reference_factor = 4;
  int parallelism = 0;  // 0 = hardware concurrency
  bool proxy_check = true;
  double richardson_tol = 1e-9;
};

struct SweepPoint {
  double value = 0.0;     // swept alpha or cutoff
  double alpha = 0.0;     // effective alpha of the run
  double lambda_m = 0.0;
  double lambda_m1 = 0.0;
  std::size_t m = 0;      // modes within the cutoff
  double error = 0.0;     // sup over samples of |u_ref - u_run|
  double bound_sq = 0.0;  // theorem bound on error^2
  double ratio_sq = 0.0;  // error^2 / bound_sq
  double fit_x = 0.0;
  bool monitors_pass = false;
  double richardson_error = 0.0;
};

struct SweepResult {
  std::string kind;  // alpha | galerkin | combined
  std::string model;
  std::vector<SweepPoint> points;
  RateFit fit;
  /// Minimum fitted order the sweep asserts: 0.9 for the alpha sweep (the
  /// proven rate is first order up to the log factor), 1.0 for the cutoff
  /// sweeps. Degenerate all-zero error curves pass trivially.
  double order_threshold = 0.0;
  bool monotone = false;
  bool bounds_pass = false;
  bool monitors_pass = false;
  bool richardson_pass = false;
  double proxy_rel_change = 0.0;  // reference-doubling validity,  < 0 when skipped
  double reference_cutoff = 0.0;
  int reference_resolution = 0;
  Calibration calibration;

  bool fit_ok() const { return fit.degenerate || fit.order >= order_threshold; }
  bool pass() const;
  std::string csv() const;
  std::string json() const;
};

/// Model error sweep against a refined reference system, fitting the decay
/// of sup_t |u - u^alpha| in the variable alpha (1 + log(L/(2 pi alpha)))^{1/2}.
SweepResult alpha_sweep(const SweepSpec& spec, ModelKind model, const Calibration& cal);

/// Truncation error sweep for the smoothed model at fixed alpha, fitting in
/// lambda_{m+1}^{-1} (1 + log(lambda_{m+1}/lambda_1))^{1/2}.
SweepResult galerkin_sweep(const SweepSpec& spec, const Calibration& cal);

/// Coupled sweep with alpha(m) = 2 pi / (lambda_{m+1} L), fitting squared
/// errors in (1/(m+1))^2 log(m+1).
SweepResult combined_sweep(const SweepSpec& spec, const Calibration& cal);

}  // namespace alphaflow
