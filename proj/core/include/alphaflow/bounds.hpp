// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "alphaflow/integrator.hpp"
#include "alphaflow/models.hpp"

namespace alphaflow {

/// One calibration dial per inequality family, standing in for the generic
/// dimensionless constants. Defaults are 1; `calibrate` replaces them with
/// the empirical maxima measured on a seeded field battery.
struct Calibration {
  double interpolated = 1.0, linf_advector = 1.0, grad_linf = 1.0, linf_test = 1.0,
      rotational = 1.0;
  double h2_pairing = 1.0;
  double brezis_gallouet = 1.0;
  double log_advector = 1.0, log_test = 1.0;
  double ladyzhenskaya = 1.0;
  /// Dial used inside the a-priori/convergence constants; conservative
  /// aggregate of the measured constants those estimates compose, floored at 1.
  double composite = 1.0;

  std::string to_json() const;
};

/// Norms of the problem data entering the a-priori constants.
struct DataNorms {
  double u0_l2 = 0.0;
  double u0_h1 = 0.0;
  double u0_h2 = 0.0;
  double f_sq_integral = 0.0;  // int_0^T |f|^2 dt
  double f_sup_l2 = 0.0;       // sup_t |f(t)|
};

DataNorms data_norms(const SpectralVelocity& u0, const SpectralVelocity& forcing, double t_end);

/// Constants of the a-priori estimates and of the convergence theorems,
/// evaluated by direct substitution with the generic constant replaced by
/// the calibration dial. Quantities whose smallness hypotheses fail are NaN
/// with the matching flag false.
struct BoundConstants {
  double nu = 0.0, alpha = 0.0, box_length = 0.0, t_end = 0.0;
  double lambda1 = 0.0, lambda_m = 0.0, lambda_m1 = 0.0;
  double c = 1.0;  // composite dial used

  double K0_sq = 0.0;    // energy bound of the reference system
  double Kt0_sq = 0.0;   // H1-type bound (smoothing models)
  double Kt01_sq = 0.0;  // L2-type bound (rotational/modified models)
  double Kt00_sq = 0.0;  // Gronwall intermediate
  double Kt02_sq = 0.0;  // H1-type bound for rotational/modified models

  double log_factor = 0.0;  // 1 + log(L/(2 pi alpha))
  bool alpha_hypothesis_ok = false;   // alpha > 0 and L/(2 pi alpha) >= 1
  double eps_sq = 0.0;       // model-vs-reference L2 error bound (smoothing)
  double eps_tilde_sq = 0.0;  // same with the rotational/modified constant

  bool galerkin_hypothesis_ok = false;  // alpha^2 <= 1/lambda_{m+1}
  double Q = 0.0, R = 0.0, U_tilde = 0.0, V_tilde = 0.0, L_m = 0.0;
  double e_sq = 0.0;  // Galerkin truncation error bound

  bool combined_hypothesis_ok = false;  // alpha <= 2 pi / (lambda_{m+1} L)
  double combined_bound_sq = 0.0;       // 2 (eps_sq + e_sq)

  std::string to_json() const;
};

/// Direct substitution of the data norms into the constants. lambda_m and
/// lambda_m1 bracket the Galerkin cutoff of interest.
BoundConstants compute_constants(const SimConfig& cfg, const DataNorms& data, double lambda_m,
                                 double lambda_m1, const Calibration& cal);

/// One monitored inequality along a trajectory.
struct MonitoredEstimate {
  std::string name;
  double lhs_max = 0.0;   // max over samples of instantaneous + dissipation integral
  double rhs = 0.0;       // a-priori constant
  double max_ratio = 0.0;
  double worst_time = 0.0;
  bool pass = false;
};

struct AprioriReport {
  std::vector<MonitoredEstimate> estimates;
  double tolerance = 0.0;
  bool pass = false;
  std::string to_json() const;
};

/// Checks every estimate applicable to the model against the trajectory,
/// with dissipation integrals taken from the stepper's running integrals.
AprioriReport monitor_apriori(const Trajectory& traj, const SimConfig& cfg,
                              const BoundConstants& k, double tolerance = 1e-6);

/// Pointwise bound of the H1 norm with the logarithmic H2 correction.
struct LogInterpolationCheck {
  double lhs = 0.0;        // ||u||_inf
  double rhs_shape = 0.0;  // ||u|| (1 + log((L/2pi)|Au|/||u||))^{1/2}
  double ratio = 0.0;
  double split_radius = 0.0;  // spectral split used by the constructive proof
};

LogInterpolationCheck brezis_gallouet(const SpectralVelocity& u);
LogInterpolationCheck brezis_gallouet(const SpectralVelocity& u, PhysicalProbe& probe);

/// Operator norm of (alpha^2 A)^{1/2} (I + alpha^2 A)^{-1} on the lattice.
struct FilterDeviationCheck {
  double operator_norm = 0.0;
  bool bound_holds = false;  // <= 1/2
};

FilterDeviationCheck filter_deviation_check(const Lattice& lat, double alpha);
/// |(phi - (I+alpha^2 A)^{-1} phi, delta)| <= (alpha/2) |phi| ||delta||,
/// returned as the ratio lhs / rhs.
double filter_deviation_pair_ratio(const SpectralVelocity& phi, const SpectralVelocity& delta,
                                   double alpha);

/// sup_t ||u(t)||_inf^2 against c * K^2 (1 + log(L/(2 pi alpha))).
struct LinftyBoundReport {
  double sup_linf_sq = 0.0;
  double bound = 0.0;
  double min_c = 0.0;  // tightest dial that would make the bound hold
  bool hypothesis_ok = false;
  bool pass = false;
};

LinftyBoundReport linfty_model_bound(const Trajectory& traj, const SimConfig& cfg,
                                     const BoundConstants& k);

/// Full per-run bound report (constants + monitors), JSON-structured.
std::string bound_report_json(const SimConfig& cfg, const BoundConstants& k,
                              const AprioriReport& apriori, const LinftyBoundReport* linfty);

/// Measures the empirical constants on a seeded battery and freezes them
/// into a Calibration. The composite dial aggregates the families the
/// convergence estimates compose.
Calibration calibrate(LatticePtr lat, int trials, std::uint64_t seed);

}  // namespace alphaflow
