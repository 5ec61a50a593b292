// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "alphaflow/models.hpp"

using namespace alphaflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::array<ModelKind, 5> kAllModels = {
    ModelKind::NSE, ModelKind::LerayAlpha, ModelKind::NSAlpha, ModelKind::ModifiedLerayAlpha,
    ModelKind::SimplifiedBardina};

SimConfig base_config(ModelKind kind, int n = 16) {
  SimConfig cfg;
  cfg.model = kind;
  cfg.resolution = n;
  cfg.nu = 0.5;
  cfg.alpha = 0.25;
  cfg.seed = 77;
  cfg.initial.kind = InitialConditionSpec::Kind::RandomSmooth;
  cfg.initial.amplitude = 0.5;
  return cfg;
}
}  // namespace

TEST_SUITE("models") {

TEST_CASE("model names round-trip") {
  for (ModelKind kind : kAllModels) {
    CHECK(model_from_name(model_name(kind)) == kind);
  }
  CHECK_THROWS_AS(model_from_name("boussinesq"), std::invalid_argument);
}

TEST_CASE("config validation names the offending field") {
  SimConfig cfg = base_config(ModelKind::NSE);
  cfg.nu = 0.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), "nu_viscosity: must be positive", std::invalid_argument);
  cfg = base_config(ModelKind::NSE);
  cfg.dt = -1.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), "time_step: must be positive", std::invalid_argument);
  cfg = base_config(ModelKind::NSE);
  cfg.alpha = -0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("shear data: rhs is pure viscous decay for all five models") {
  for (ModelKind kind : kAllModels) {
    SimConfig cfg = base_config(kind);
    cfg.initial.kind = InitialConditionSpec::Kind::Shear;
    cfg.initial.amplitude = 1.0;
    auto lat = Lattice::create(cfg.box_length, cfg.resolution);
    const SpectralVelocity u = make_initial_condition(lat, cfg);
    ModelRhs rhs(lat, cfg);
    SpectralVelocity r = rhs.rhs(u);
    // Expect -nu lambda1 u.
    SpectralVelocity expected = u;
    expected *= -cfg.nu * lat->lambda1();
    r -= expected;
    CHECK(r.max_abs() < 1e-14 * u.max_abs());
  }
}

TEST_CASE("zero state with zero forcing stays zero") {
  for (ModelKind kind : kAllModels) {
    SimConfig cfg = base_config(kind);
    auto lat = Lattice::create(cfg.box_length, cfg.resolution);
    ModelRhs rhs(lat, cfg);
    SpectralVelocity z(lat);
    CHECK(norm_l2(rhs.rhs(z)) == 0.0);
  }
}

TEST_CASE("every filtered model at alpha 0 equals the reference system") {
  SimConfig nse_cfg = base_config(ModelKind::NSE);
  nse_cfg.alpha = 0.0;
  auto lat = Lattice::create(nse_cfg.box_length, nse_cfg.resolution);
  const SpectralVelocity u = make_initial_condition(lat, nse_cfg);
  ModelRhs nse(lat, nse_cfg);
  const SpectralVelocity r0 = nse.rhs(u);
  for (ModelKind kind : {ModelKind::LerayAlpha, ModelKind::NSAlpha,
                         ModelKind::ModifiedLerayAlpha, ModelKind::SimplifiedBardina}) {
    SimConfig cfg = nse_cfg;
    cfg.model = kind;
    ModelRhs m(lat, cfg);
    SpectralVelocity r = m.rhs(u);
    r -= r0;
    CHECK(r.max_abs() < 1e-13 * std::max(1.0, r0.max_abs()));
  }
}

TEST_CASE("rhs stays inside the galerkin cutoff") {
  SimConfig cfg = base_config(ModelKind::LerayAlpha);
  cfg.galerkin_cutoff = 5.0;
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  const SpectralVelocity u = make_initial_condition(lat, cfg);
  ModelRhs rhs(lat, cfg);
  const SpectralVelocity r = rhs.rhs(u);
  double outside = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (lat->lambda(i) > 5.0) outside += std::norm(r.x(i)) + std::norm(r.y(i));
  }
  CHECK(outside == 0.0);
}

TEST_CASE("nonlinear term is orthogonal to the model's energy pairing") {
  // For each model, pairing the v-form equation with its test function
  // leaves only dissipation and production: the nonlinearity cancels.
  for (ModelKind kind : kAllModels) {
    SimConfig cfg = base_config(kind);
    cfg.forcing.kind = ForcingSpec::Kind::SingleShell;
    cfg.forcing.shell = 2;
    cfg.forcing.amplitude = 0.2;
    auto lat = Lattice::create(cfg.box_length, cfg.resolution);
    const SpectralVelocity u = make_initial_condition(lat, cfg);
    ModelRhs rhs(lat, cfg);
    const SpectralVelocity du = rhs.rhs(u);
    const EnergyBalance eb = rhs.energy_balance(u);
    const SpectralVelocity dv = helmholtz_inverse(du, cfg.model == ModelKind::NSE ? 0.0 : cfg.alpha);
    double dE;  // d(energy)/dt along the rhs
    switch (kind) {
      case ModelKind::NSE:
      case ModelKind::NSAlpha:
      case ModelKind::ModifiedLerayAlpha:
        dE = 2.0 * inner_l2(dv, u);
        break;
      default:
        dE = 2.0 * inner_l2(dv, apply_stokes(u));
        break;
    }
    const double scale = std::max(1.0, eb.dissipation);
    CHECK(std::abs(dE + eb.dissipation - eb.production) < 1e-11 * scale);
  }
}

TEST_CASE("energy balance terms with zero forcing") {
  for (ModelKind kind : kAllModels) {
    SimConfig cfg = base_config(kind);
    auto lat = Lattice::create(cfg.box_length, cfg.resolution);
    const SpectralVelocity u = make_initial_condition(lat, cfg);
    ModelRhs rhs(lat, cfg);
    const EnergyBalance eb = rhs.energy_balance(u);
    CHECK(eb.production == 0.0);
    CHECK(eb.dissipation >= 0.0);
    CHECK(eb.energy > 0.0);
  }
}

TEST_CASE("forcing menu is solenoidal and confined to the cutoff") {
  SimConfig cfg = base_config(ModelKind::NSE);
  cfg.forcing.kind = ForcingSpec::Kind::SingleShell;
  cfg.forcing.shell = 2;
  cfg.forcing.amplitude = 0.3;
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  const SpectralVelocity f = make_forcing(lat, cfg);
  CHECK(norm_l2(f) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.max_relative_divergence() < 1e-14);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (lat->shell(i) != 2) CHECK(std::abs(f.x(i)) + std::abs(f.y(i)) == 0.0);
  }

  cfg.forcing.kind = ForcingSpec::Kind::RandomSmooth;
  const SpectralVelocity fr = make_forcing(lat, cfg);
  CHECK(fr.max_relative_divergence() < 1e-13);
  CHECK(fr.max_reality_defect() < 1e-15);
}

TEST_CASE("initial conditions are reproducible across refining lattices") {
  SimConfig cfg = base_config(ModelKind::NSE, 8);
  cfg.initial.resolution = 8;
  auto coarse = Lattice::create(cfg.box_length, 8);
  const SpectralVelocity u8 = make_initial_condition(coarse, cfg);

  SimConfig fine_cfg = cfg;
  fine_cfg.resolution = 16;
  auto fine = Lattice::create(cfg.box_length, 16);
  const SpectralVelocity u16 = make_initial_condition(fine, fine_cfg);
  CHECK(l2_distance(u16, u8) < 1e-14);
}

}  // TEST_SUITE
