// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace alphaflow {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// exp with an explicit overflow guard; the Gronwall exponents can be large
// for aggressive data but must never turn into silent garbage.
double guarded_exp(double x) {
  if (x > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(x);
}
}  // namespace

std::string Calibration::to_json() const {
  nlohmann::json j{
      {"interpolated", interpolated},
      {"linf_advector", linf_advector},
      {"grad_linf", grad_linf},
      {"linf_test", linf_test},
      {"rotational", rotational},
      {"h2_pairing", h2_pairing},
      {"brezis_gallouet", brezis_gallouet},
      {"log_advector", log_advector},
      {"log_test", log_test},
      {"ladyzhenskaya", ladyzhenskaya},
      {"composite", composite},
  };
  return j.dump(2);
}

DataNorms data_norms(const SpectralVelocity& u0, const SpectralVelocity& forcing, double t_end) {
  DataNorms d;
  d.u0_l2 = norm_l2(u0);
  d.u0_h1 = norm_h1(u0);
  d.u0_h2 = norm_h2(u0);
  const double f_l2 = norm_l2(forcing);
  d.f_sq_integral = f_l2 * f_l2 * t_end;  // forcing menu is time-independent
  d.f_sup_l2 = f_l2;
  return d;
}

BoundConstants compute_constants(const SimConfig& cfg, const DataNorms& d, double lambda_m,
                                 double lambda_m1, const Calibration& cal) {
  BoundConstants k;
  k.nu = cfg.nu;
  k.alpha = cfg.alpha;
  k.box_length = cfg.box_length;
  k.t_end = cfg.t_end;
  const double two_pi = 2.0 * std::numbers::pi;
  k.lambda1 = (two_pi / cfg.box_length) * (two_pi / cfg.box_length);
  k.lambda_m = lambda_m;
  k.lambda_m1 = lambda_m1;
  const double c = cal.composite;
  k.c = c;

  const double nu = cfg.nu, alpha = cfg.alpha, T = cfg.t_end;
  const double a2 = alpha * alpha;
  const double u0l2sq = d.u0_l2 * d.u0_l2;
  const double u0h1sq = d.u0_h1 * d.u0_h1;
  const double u0h2sq = d.u0_h2 * d.u0_h2;
  const double fI = d.f_sq_integral;

  k.K0_sq = u0l2sq + fI / (nu * k.lambda1);
  k.Kt0_sq = u0h1sq + a2 * u0h2sq + fI / nu;
  k.Kt01_sq = u0l2sq + a2 * u0h1sq + fI / (nu * k.lambda1);
  k.Kt00_sq = guarded_exp(c * k.Kt01_sq / (nu * nu)) * k.Kt0_sq;
  k.Kt02_sq = k.Kt0_sq + (c / (nu * nu)) * k.Kt00_sq * k.Kt01_sq;

  k.alpha_hypothesis_ok = alpha > 0.0 && cfg.box_length / (two_pi * alpha) >= 1.0;
  if (k.alpha_hypothesis_ok) {
    k.log_factor = 1.0 + std::log(cfg.box_length / (two_pi * alpha));
    const double gron = guarded_exp(c * k.K0_sq / (nu * nu));
    k.eps_sq = (c * a2 / nu) * gron * (T * k.Kt0_sq * k.Kt0_sq * k.log_factor + fI);
    k.eps_tilde_sq = (c * a2 / nu) * gron * (T * k.Kt02_sq * k.Kt02_sq * k.log_factor + fI);

    k.Q = u0h2sq + (c / (nu * nu)) *
                       (d.f_sup_l2 * d.f_sup_l2 + k.Kt0_sq * k.Kt0_sq * k.log_factor);
    k.R = (c / (nu * nu)) * k.Kt0_sq * k.Kt0_sq * k.log_factor;
    k.U_tilde = (c / nu) * (k.Kt0_sq * T + k.Kt0_sq / (nu * lambda_m1) +
                            k.Kt0_sq * k.Kt0_sq * T / (nu * nu * k.lambda1));
    k.V_tilde = (c / nu) * k.Kt0_sq * (k.Q + k.R) * T +
                (c / (nu * nu)) * k.Kt0_sq * (k.Q + k.R) / lambda_m1 +
                (c / (nu * nu)) * k.Kt0_sq * k.Kt0_sq;
    k.L_m = 1.0 + std::log(lambda_m / k.lambda1);
    k.galerkin_hypothesis_ok = a2 <= 1.0 / lambda_m1 * (1.0 + 1e-12);
    if (k.galerkin_hypothesis_ok) {
      k.e_sq = (k.Q + k.R + k.L_m * k.U_tilde * k.V_tilde) / (lambda_m1 * lambda_m1);
    } else {
      k.e_sq = kNaN;
    }
    k.combined_hypothesis_ok =
        k.galerkin_hypothesis_ok && alpha <= two_pi / (lambda_m1 * cfg.box_length) * (1.0 + 1e-12);
    k.combined_bound_sq = k.combined_hypothesis_ok ? 2.0 * (k.eps_sq + k.e_sq) : kNaN;
  } else {
    k.log_factor = kNaN;
    k.eps_sq = kNaN;
    k.eps_tilde_sq = kNaN;
    k.Q = k.R = k.U_tilde = k.V_tilde = k.L_m = kNaN;
    k.e_sq = kNaN;
    k.galerkin_hypothesis_ok = false;
    k.combined_hypothesis_ok = false;
    k.combined_bound_sq = kNaN;
  }
  return k;
}

std::string BoundConstants::to_json() const {
  nlohmann::json j{
      {"nu", nu},
      {"alpha", alpha},
      {"box_length", box_length},
      {"t_end", t_end},
      {"lambda1", lambda1},
      {"lambda_m", lambda_m},
      {"lambda_m1", lambda_m1},
      {"c", c},
      {"K0_sq", K0_sq},
      {"Kt0_sq", Kt0_sq},
      {"Kt01_sq", Kt01_sq},
      {"Kt00_sq", Kt00_sq},
      {"Kt02_sq", Kt02_sq},
      {"log_factor", log_factor},
      {"alpha_hypothesis_ok", alpha_hypothesis_ok},
      {"eps_sq", eps_sq},
      {"eps_tilde_sq", eps_tilde_sq},
      {"galerkin_hypothesis_ok", galerkin_hypothesis_ok},
      {"Q", Q},
      {"R", R},
      {"U_tilde", U_tilde},
      {"V_tilde", V_tilde},
      {"L_m", L_m},
      {"e_sq", e_sq},
      {"combined_hypothesis_ok", combined_hypothesis_ok},
      {"combined_bound_sq", combined_bound_sq},
  };
  return j.dump(2);
}

namespace {

struct EstimateDef {
  std::string name;
  // instantaneous part and dissipation integral at a sample
  double (*lhs)(const SampleRecord&, double a2, double nu);
  double BoundConstants::* rhs;
};

double lhs_l2_energy(const SampleRecord& s, double, double nu) {
  return s.l2 * s.l2 + nu * s.integrals.h1_sq;
}
double lhs_h1_enstrophy(const SampleRecord& s, double a2, double nu) {
  return s.h1 * s.h1 + a2 * s.h2 * s.h2 + nu * (s.integrals.h2_sq + a2 * s.integrals.a32_sq);
}
double lhs_l2_alpha(const SampleRecord& s, double a2, double nu) {
  return s.l2 * s.l2 + a2 * s.h1 * s.h1 + nu * (s.integrals.h1_sq + a2 * s.integrals.h2_sq);
}

}  // namespace

AprioriReport monitor_apriori(const Trajectory& traj, const SimConfig& cfg,
                              const BoundConstants& k, double tolerance) {
  std::vector<EstimateDef> defs;
  switch (cfg.model) {
    case ModelKind::NSE:
      defs.push_back({"energy_l2", &lhs_l2_energy, &BoundConstants::K0_sq});
      break;
    case ModelKind::LerayAlpha:
    case ModelKind::SimplifiedBardina:
      defs.push_back({"enstrophy_h1", &lhs_h1_enstrophy, &BoundConstants::Kt0_sq});
      break;
    case ModelKind::NSAlpha:
    case ModelKind::ModifiedLerayAlpha:
      defs.push_back({"energy_l2_alpha", &lhs_l2_alpha, &BoundConstants::Kt01_sq});
      defs.push_back({"enstrophy_h1", &lhs_h1_enstrophy, &BoundConstants::Kt02_sq});
      break;
  }

  AprioriReport rep;
  rep.tolerance = tolerance;
  rep.pass = true;
  const double a2 = cfg.alpha * cfg.alpha;
  for (const auto& def : defs) {
    MonitoredEstimate m;
    m.name = def.name;
    m.rhs = k.*(def.rhs);
    for (const auto& s : traj.samples) {
      const double lhs = def.lhs(s, a2, cfg.nu);
      if (lhs > m.lhs_max) {
        m.lhs_max = lhs;
        m.worst_time = s.t;
      }
    }
    m.max_ratio = m.rhs > 0.0 ? m.lhs_max / m.rhs : (m.lhs_max == 0.0 ? 0.0 : kNaN);
    m.pass = std::isfinite(m.rhs) && m.max_ratio <= 1.0 + tolerance;
    rep.pass = rep.pass && m.pass;
    rep.estimates.push_back(std::move(m));
  }
  return rep;
}

std::string AprioriReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : estimates) {
    arr.push_back({{"name", e.name},
                   {"lhs_max", e.lhs_max},
                   {"rhs", e.rhs},
                   {"max_ratio", e.max_ratio},
                   {"worst_time", e.worst_time},
                   {"pass", e.pass}});
  }
  nlohmann::json j{{"estimates", arr}, {"tolerance", tolerance}, {"pass", pass}};
  return j.dump(2);
}

LogInterpolationCheck brezis_gallouet(const SpectralVelocity& u, PhysicalProbe& probe) {
  const double h1 = norm_h1(u);
  if (h1 == 0.0) throw std::invalid_argument("brezis_gallouet: zero field");
  const double h2 = norm_h2(u);
  const double L = u.lattice().box_length();
  const double two_pi = 2.0 * std::numbers::pi;

  LogInterpolationCheck out;
  out.lhs = probe.norms(u).linf;
  const double shape = L / two_pi * h2 / h1;  // >= 1 by the Poincare inequality
  out.rhs_shape = h1 * std::sqrt(1.0 + std::log(shape));
  out.ratio = out.lhs / out.rhs_shape;
  // The constructive proof splits the spectrum at this radius.
  out.split_radius = std::sqrt(std::max(shape * shape - 1.0, 0.0)) + 1.0;
  return out;
}

LogInterpolationCheck brezis_gallouet(const SpectralVelocity& u) {
  PhysicalProbe probe(u.lattice_ptr());
  return brezis_gallouet(u, probe);
}

FilterDeviationCheck filter_deviation_check(const Lattice& lat, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("filter_deviation_check: alpha must be positive");
  FilterDeviationCheck out;
  for (const auto& s : lat.stokes_eigenvalues()) {
    const double y = alpha * std::sqrt(s.lambda);
    out.operator_norm = std::max(out.operator_norm, y / (1.0 + y * y));
  }
  out.bound_holds = out.operator_norm <= 0.5 + 1e-15;
  return out;
}

double filter_deviation_pair_ratio(const SpectralVelocity& phi, const SpectralVelocity& delta,
                                   double alpha) {
  SpectralVelocity diff = phi;
  diff -= helmholtz_filter(phi, alpha);
  const double lhs = std::abs(inner_l2(diff, delta));
  const double rhs = 0.5 * alpha * norm_l2(phi) * norm_h1(delta);
  return rhs > 0.0 ? lhs / rhs : 0.0;
}

LinftyBoundReport linfty_model_bound(const Trajectory& traj, const SimConfig& cfg,
                                     const BoundConstants& k) {
  LinftyBoundReport rep;
  rep.hypothesis_ok = k.alpha_hypothesis_ok;
  if (!rep.hypothesis_ok) return rep;
  if (traj.samples.empty()) return rep;

  PhysicalProbe probe(traj.samples.front().u.lattice_ptr());
  for (const auto& s : traj.samples) {
    const double linf = probe.norms(s.u).linf;
    rep.sup_linf_sq = std::max(rep.sup_linf_sq, linf * linf);
  }
  const bool smoothing =
      cfg.model == ModelKind::LerayAlpha || cfg.model == ModelKind::SimplifiedBardina;
  const double Ksq = smoothing ? k.Kt0_sq : k.Kt02_sq;
  rep.bound = k.c * Ksq * k.log_factor;
  rep.min_c = rep.sup_linf_sq / (Ksq * k.log_factor);
  rep.pass = rep.sup_linf_sq <= rep.bound;
  return rep;
}

std::string bound_report_json(const SimConfig& cfg, const BoundConstants& k,
                              const AprioriReport& apriori, const LinftyBoundReport* linfty) {
  nlohmann::json j;
  j["model"] = model_name(cfg.model);
  j["constants"] = nlohmann::json::parse(k.to_json());
  j["apriori"] = nlohmann::json::parse(apriori.to_json());
  if (linfty != nullptr) {
    j["linfty_bound"] = {{"sup_linf_sq", linfty->sup_linf_sq},
                         {"bound", linfty->bound},
                         {"min_c", linfty->min_c},
                         {"hypothesis_ok", linfty->hypothesis_ok},
                         {"pass", linfty->pass}};
  }
  return j.dump(2);
}

Calibration calibrate(LatticePtr lat, int trials, std::uint64_t seed) {
  const IdentityReport rep = identity_suite(lat, trials, seed);
  Calibration cal;
  cal.interpolated = rep.c_interpolated;
  cal.linf_advector = rep.c_linf_advector;
  cal.grad_linf = rep.c_grad_linf;
  cal.linf_test = rep.c_linf_test;
  cal.rotational = rep.c_rotational;
  cal.h2_pairing = rep.c_h2_pairing;
  cal.log_advector = rep.c_log_advector;
  cal.log_test = rep.c_log_test;
  cal.ladyzhenskaya = rep.c_ladyzhenskaya;

  PhysicalProbe probe(lat);
  double bg = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SpectralVelocity u =
        random_smooth_field(lat, seed + 7919ULL * static_cast<std::uint64_t>(t) + 13ULL, 4.0, 1.0);
    bg = std::max(bg, brezis_gallouet(u, probe).ratio);
  }
  cal.brezis_gallouet = bg;

  // The convergence estimates compose the bilinear inequalities, the
  // gradient bound of Lemma 2 and the squared pointwise bound; one
  // conservative dial covers them all.
  cal.composite = std::max({1.0, cal.interpolated * cal.interpolated, cal.linf_advector, cal.linf_test, cal.h2_pairing,
                          cal.brezis_gallouet * cal.brezis_gallouet, cal.log_advector, cal.log_test});
  return cal;
}

}  // namespace alphaflow
