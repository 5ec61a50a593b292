// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/models.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace alphaflow {

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::NSE: return "nse";
    case ModelKind::LerayAlpha: return "leray_alpha";
    case ModelKind::NSAlpha: return "ns_alpha";
    case ModelKind::ModifiedLerayAlpha: return "modified_leray_alpha";
    case ModelKind::SimplifiedBardina: return "simplified_bardina";
  }
  throw std::invalid_argument("model_name: unknown kind");
}

ModelKind model_from_name(const std::string& name) {
  if (name == "nse") return ModelKind::NSE;
  if (name == "leray_alpha") return ModelKind::LerayAlpha;
  if (name == "ns_alpha") return ModelKind::NSAlpha;
  if (name == "modified_leray_alpha") return ModelKind::ModifiedLerayAlpha;
  if (name == "simplified_bardina") return ModelKind::SimplifiedBardina;
  throw std::invalid_argument("model: unknown name '" + name + "'");
}

void SimConfig::validate() const {
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("box_length: must be positive");
  }
  if (resolution < 4 || resolution % 2 != 0) {
    throw std::invalid_argument("resolution: must be an even integer >= 4");
  }
  if (!(nu > 0.0)) throw std::invalid_argument("nu_viscosity: must be positive");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha_length: must be >= 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("time_horizon: must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("time_step: must be positive");
  if (sample_count < 1) throw std::invalid_argument("sample_count: must be >= 1");
  if (initial.kind == InitialConditionSpec::Kind::RandomSmooth && initial.spectrum_decay < 4.0) {
    throw std::invalid_argument("initial_condition.spectrum_decay: must be >= 4");
  }
  if (initial.resolution != 0 &&
      (initial.resolution < 4 || initial.resolution % 2 != 0 || initial.resolution > resolution)) {
    throw std::invalid_argument("initial_condition.resolution: must be even, >= 4, <= resolution");
  }
  if (forcing.resolution != 0 &&
      (forcing.resolution < 4 || forcing.resolution % 2 != 0 || forcing.resolution > resolution)) {
    throw std::invalid_argument("forcing.resolution: must be even, >= 4, <= resolution");
  }
  if (galerkin_cutoff < 0.0) throw std::invalid_argument("galerkin_cutoff: must be >= 0");
}

double SimConfig::effective_cutoff(const Lattice& lat) const {
  const double cutoff = galerkin_cutoff == 0.0 ? lat.max_complete_shell() : galerkin_cutoff;
  if (!lat.valid_cutoff(cutoff)) {
    throw std::invalid_argument("galerkin_cutoff: not at a complete shell boundary of the lattice");
  }
  return cutoff;
}

SpectralVelocity make_initial_condition(LatticePtr lat, const SimConfig& cfg) {
  const double cutoff = cfg.effective_cutoff(*lat);
  SpectralVelocity u0;
  switch (cfg.initial.kind) {
    case InitialConditionSpec::Kind::Shear:
      u0 = shear_field(lat, cfg.initial.amplitude);
      break;
    case InitialConditionSpec::Kind::TaylorGreen:
      u0 = taylor_green_field(lat, cfg.initial.amplitude);
      break;
    case InitialConditionSpec::Kind::RandomSmooth: {
      const int native = cfg.initial.resolution == 0 ? cfg.resolution : cfg.initial.resolution;
      if (native == cfg.resolution) {
        u0 = random_smooth_field(lat, cfg.seed, cfg.initial.spectrum_decay, cfg.initial.amplitude);
      } else {
        auto gen = Lattice::create(cfg.box_length, native);
        u0 = embed(random_smooth_field(gen, cfg.seed, cfg.initial.spectrum_decay,
                                       cfg.initial.amplitude),
                   lat);
      }
      break;
    }
  }
  return galerkin_project(u0, cutoff);
}

SpectralVelocity make_forcing(LatticePtr lat, const SimConfig& cfg) {
  const double cutoff = cfg.effective_cutoff(*lat);
  SpectralVelocity f(lat);
  switch (cfg.forcing.kind) {
    case ForcingSpec::Kind::Zero:
      return f;
    case ForcingSpec::Kind::SingleShell:
      f = single_shell_field(lat, cfg.forcing.shell, cfg.forcing.amplitude);
      break;
    case ForcingSpec::Kind::RandomSmooth: {
      const int native = cfg.forcing.resolution == 0 ? cfg.resolution : cfg.forcing.resolution;
      const std::uint64_t fseed = cfg.seed ^ 0x9e3779b97f4a7c15ULL;
      if (native == cfg.resolution) {
        f = random_smooth_field(lat, fseed, cfg.forcing.spectrum_decay, cfg.forcing.amplitude);
      } else {
        auto gen = Lattice::create(cfg.box_length, native);
        f = embed(random_smooth_field(gen, fseed, cfg.forcing.spectrum_decay,
                                      cfg.forcing.amplitude),
                  lat);
      }
      break;
    }
  }
  return galerkin_project(f, cutoff);
}

struct ModelRhs::Impl {
  LatticePtr lat;
  SimConfig cfg;
  double cutoff = 0.0;
  BilinearWorkspace ws;
  std::vector<double> filter;     // 1/(1+alpha^2 lambda), zeroed outside cutoff
  std::vector<double> one_plus;   // 1+alpha^2 lambda
  SpectralVelocity forcing;       // P_m f
  SpectralVelocity forcing_term;  // F P_m f
  SpectralVelocity v, nl;         // scratch

  Impl(LatticePtr l, const SimConfig& c)
      : lat(l), cfg(c), cutoff(c.effective_cutoff(*l)), ws(l), v(l), nl(l) {
    // The reference system carries no filter regardless of the configured alpha.
    const double a2 = cfg.model == ModelKind::NSE ? 0.0 : cfg.alpha * cfg.alpha;
    const double bound = cutoff * (1.0 + 1e-12);
    filter.resize(lat->mode_count());
    one_plus.resize(lat->mode_count());
    for (std::size_t i = 0; i < lat->mode_count(); ++i) {
      const double l1 = 1.0 + a2 * lat->lambda(i);
      one_plus[i] = l1;
      filter[i] = lat->lambda(i) > bound ? 0.0 : 1.0 / l1;
    }
    forcing = make_forcing(lat, cfg);
    forcing_term = forcing;
    for (std::size_t i = 0; i < lat->mode_count(); ++i) {
      forcing_term.x(i) *= filter[i];
      forcing_term.y(i) *= filter[i];
    }
  }
};

ModelRhs::ModelRhs(LatticePtr lat, const SimConfig& cfg)
    : impl_(std::make_unique<Impl>(std::move(lat), cfg)) {
  impl_->cfg.validate();
}

ModelRhs::~ModelRhs() = default;

const Lattice& ModelRhs::lattice() const { return *impl_->lat; }
const LatticePtr& ModelRhs::lattice_ptr() const { return impl_->lat; }
const SimConfig& ModelRhs::config() const { return impl_->cfg; }
double ModelRhs::cutoff() const { return impl_->cutoff; }
const SpectralVelocity& ModelRhs::forcing_term() const { return impl_->forcing_term; }

void ModelRhs::nonlinear(const SpectralVelocity& u, SpectralVelocity& out) {
  auto& im = *impl_;
  const double alpha = im.cfg.alpha;
  const ModelKind kind = im.cfg.model;

  const bool needs_v = alpha > 0.0 && kind != ModelKind::NSE &&
                       kind != ModelKind::SimplifiedBardina;
  if (needs_v) {
    im.v = u;
    for (std::size_t i = 0; i < im.v.size(); ++i) {
      im.v.x(i) *= im.one_plus[i];
      im.v.y(i) *= im.one_plus[i];
    }
  }

  switch (kind) {
    case ModelKind::NSE:
    case ModelKind::SimplifiedBardina:
      im.ws.advective_into(u, u, im.nl);
      break;
    case ModelKind::LerayAlpha:
      im.ws.advective_into(u, needs_v ? im.v : u, im.nl);
      break;
    case ModelKind::NSAlpha:
      im.ws.rotational_into(u, needs_v ? im.v : u, im.nl);
      break;
    case ModelKind::ModifiedLerayAlpha:
      im.ws.advective_into(needs_v ? im.v : u, u, im.nl);
      break;
  }

  // out = -F P_m N + F P_m f; the filter table carries the cutoff mask.
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.x(i) = im.forcing_term.x(i) - im.filter[i] * im.nl.x(i);
    out.y(i) = im.forcing_term.y(i) - im.filter[i] * im.nl.y(i);
  }
}

SpectralVelocity ModelRhs::rhs(const SpectralVelocity& u) {
  SpectralVelocity out(impl_->lat);
  nonlinear(u, out);
  const Lattice& lat = *impl_->lat;
  const double nu = impl_->cfg.nu;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.x(i) -= nu * lat.lambda(i) * u.x(i);
    out.y(i) -= nu * lat.lambda(i) * u.y(i);
  }
  return out;
}

EnergyBalance ModelRhs::energy_balance(const SpectralVelocity& u) const {
  return energy_balance_terms(impl_->cfg.model, u, impl_->forcing, impl_->cfg.nu,
                              impl_->cfg.alpha);
}

EnergyBalance energy_balance_terms(ModelKind kind, const SpectralVelocity& u,
                                   const SpectralVelocity& forcing, double nu, double alpha) {
  EnergyBalance out;
  const double a2 = alpha * alpha;
  const double l2 = norm_l2(u), h1 = norm_h1(u), h2 = norm_h2(u);
  switch (kind) {
    case ModelKind::NSE: {
      out.energy = l2 * l2;
      out.dissipation = 2.0 * nu * h1 * h1;
      out.production = 2.0 * inner_l2(forcing, u);
      break;
    }
    case ModelKind::LerayAlpha:
    case ModelKind::SimplifiedBardina: {
      const double a32 = norm_a(u, 1.5);
      out.energy = h1 * h1 + a2 * h2 * h2;
      out.dissipation = 2.0 * nu * (h2 * h2 + a2 * a32 * a32);
      out.production = 2.0 * inner_l2(forcing, apply_stokes(u));
      break;
    }
    case ModelKind::NSAlpha:
    case ModelKind::ModifiedLerayAlpha: {
      out.energy = l2 * l2 + a2 * h1 * h1;
      out.dissipation = 2.0 * nu * (h1 * h1 + a2 * h2 * h2);
      out.production = 2.0 * inner_l2(forcing, u);
      break;
    }
  }
  return out;
}

}  // namespace alphaflow
