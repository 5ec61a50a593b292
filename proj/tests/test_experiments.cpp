// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "alphaflow/experiments.hpp"

using namespace alphaflow;

namespace {

SimConfig small_base() {
  SimConfig cfg;
  cfg.model = ModelKind::LerayAlpha;
  cfg.resolution = 16;
  cfg.nu = 0.5;
  cfg.alpha = 0.2;
  cfg.t_end = 0.2;
  cfg.dt = 2e-3;
  cfg.sample_count = 8;
  cfg.seed = 21;
  cfg.initial.amplitude = 0.5;
  return cfg;
}
}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("rate fit on exact power laws") {
  SUBCASE("quadratic") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> e;
    for (double v : x) e.push_back(v * v);
    const RateFit fit = fit_rate(x, e);
    CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.points_used == 5);
  }
  SUBCASE("linear with prefactor") {
    const std::vector<double> x = {0.5, 1.0, 2.0, 4.0};
    std::vector<double> e;
    for (double v : x) e.push_back(3.0 * v);
    const RateFit fit = fit_rate(x, e);
    CHECK(fit.order == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("one percent multiplicative noise keeps the order near 2") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    std::vector<double> x, e;
    for (int i = 0; i < 8; ++i) {
      const double v = std::pow(2.0, -i);
      x.push_back(v);
      e.push_back(v * v * (1.0 + noise(rng)));
    }
    const RateFit fit = fit_rate(x, e);
    CHECK(fit.order > 1.9);
    CHECK(fit.order < 2.1);
  }
  SUBCASE("argument validation") {
    const std::vector<double> x3 = {1.0, 2.0, 3.0};
    const std::vector<double> e3 = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_rate(x3, e3), std::invalid_argument);
    const std::vector<double> xneg = {1.0, -2.0, 3.0, 4.0};
    const std::vector<double> e4 = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(fit_rate(xneg, e4), std::invalid_argument);
  }
  SUBCASE("zero errors are excluded with a flag") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const std::vector<double> e = {1.0, 4.0, 0.0, 16.0, 25.0, 36.0};
    const RateFit fit = fit_rate(x, e);
    CHECK(fit.zeros_excluded);
    CHECK(fit.points_used == 5);
    CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("all-zero errors degenerate instead of fitting") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> e = {0.0, 0.0, 0.0, 0.0};
    const RateFit fit = fit_rate(x, e);
    CHECK(fit.degenerate);
  }
}

TEST_CASE("alpha sweep on shear data measures exact zeros") {
  // Identical exact solutions for every alpha: the sweep must complete,
  // flag the degenerate fit, and trivially satisfy the bounds.
  SweepSpec spec;
  spec.base = small_base();
  spec.base.initial.kind = InitialConditionSpec::Kind::Shear;
  spec.base.initial.amplitude = 1.0;
  spec.base.resolution = 8;
  spec.base.nu = 1.0;
  spec.values = {0.25, 0.125, 0.0625, 0.03125};
  spec.reference_factor = 2;
  spec.parallelism = 2;
  for (ModelKind kind : {ModelKind::LerayAlpha, ModelKind::NSAlpha,
                         ModelKind::ModifiedLerayAlpha, ModelKind::SimplifiedBardina}) {
    const SweepResult res = alpha_sweep(spec, kind, Calibration{});
    CHECK(res.fit.degenerate);
    CHECK(res.monotone);
    CHECK(res.bounds_pass);
    for (const auto& p : res.points) CHECK(p.error < 1e-11);
  }
}

TEST_CASE("alpha sweep on smooth random data converges with order at least one") {
  SweepSpec spec;
  spec.base = small_base();
  spec.values = {0.25, 0.125, 0.0625, 0.03125};
  spec.reference_factor = 2;
  spec.parallelism = 2;
  const SweepResult res = alpha_sweep(spec, ModelKind::LerayAlpha, Calibration{});
  CHECK(res.monotone);
  CHECK(res.richardson_pass);
  CHECK(res.bounds_pass);
  CHECK(res.monitors_pass);
  CHECK(!res.fit.degenerate);
  CHECK(res.fit.order >= 0.9);
  CHECK(res.pass());
  // Sweep determinism: identical spec, identical CSV bytes.
  const SweepResult res2 = alpha_sweep(spec, ModelKind::LerayAlpha, Calibration{});
  CHECK(res.csv() == res2.csv());
}

TEST_CASE("alpha sweep rejects hypothesis violations") {
  SweepSpec spec;
  spec.base = small_base();
  spec.values = {2.0};  // L/(2 pi alpha) < 1
  CHECK_THROWS_AS(alpha_sweep(spec, ModelKind::LerayAlpha, Calibration{}), HypothesisError);
  spec.values = {};
  CHECK_THROWS_AS(alpha_sweep(spec, ModelKind::LerayAlpha, Calibration{}),
                  std::invalid_argument);
  spec.values = {0.1};
  CHECK_THROWS_AS(alpha_sweep(spec, ModelKind::NSE, Calibration{}), std::invalid_argument);
}

TEST_CASE("galerkin sweep: zero error when the reference shares the cutoff") {
  SweepSpec spec;
  spec.base = small_base();
  spec.base.alpha = 0.2;
  spec.values = {4.0};
  spec.reference_factor = 1;  // reference lands on the same shell
  spec.proxy_check = false;
  const SweepResult res = galerkin_sweep(spec, Calibration{});
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].error < 1e-13);
}

TEST_CASE("galerkin sweep decreases strictly and meets its bound") {
  SweepSpec spec;
  spec.base = small_base();
  spec.base.alpha = 0.2;  // alpha^2 = 0.04 <= 1/lambda_{m+1} for every swept cutoff
  spec.values = {2.0, 4.0, 8.0, 16.0};
  spec.reference_factor = 2;  // reference shell 32 fits; the doubled one would not
  spec.proxy_check = false;
  spec.parallelism = 2;
  const SweepResult res = galerkin_sweep(spec, Calibration{});
  CHECK(res.monotone);
  CHECK(res.bounds_pass);
  CHECK(!res.fit.degenerate);
  CHECK(res.fit.order >= 1.0);
}

TEST_CASE("galerkin sweep refuses bad cutoffs and models") {
  SweepSpec spec;
  spec.base = small_base();
  spec.values = {3.0};  // not an eigenvalue shell
  CHECK_THROWS_AS(galerkin_sweep(spec, Calibration{}), std::invalid_argument);
  spec.values = {4.0};
  spec.base.alpha = 0.9;  // alpha^2 > 1/5
  CHECK_THROWS_AS(galerkin_sweep(spec, Calibration{}), HypothesisError);
  spec.base = small_base();
  spec.base.model = ModelKind::NSE;
  spec.values = {4.0};
  CHECK_THROWS_AS(galerkin_sweep(spec, Calibration{}), std::invalid_argument);
}

TEST_CASE("combined sweep couples alpha to the cutoff") {
  SweepSpec spec;
  spec.base = small_base();
  spec.values = {2.0, 4.0, 8.0, 16.0};
  spec.reference_factor = 2;
  spec.proxy_check = false;
  spec.parallelism = 2;
  const SweepResult res = combined_sweep(spec, Calibration{});
  REQUIRE(res.points.size() == 4);
  for (const auto& p : res.points) {
    CHECK(p.alpha == doctest::Approx(1.0 / p.lambda_m1).epsilon(1e-12));
    CHECK(p.alpha * p.alpha <= 1.0 / p.lambda_m1 + 1e-15);
  }
  CHECK(res.monotone);
  CHECK(res.bounds_pass);
  CHECK(!res.fit.degenerate);
  CHECK(res.fit.order >= 1.0);
}

TEST_CASE("sweep results are independent of the parallelism degree") {
  SweepSpec spec;
  spec.base = small_base();
  spec.values = {0.25, 0.125, 0.0625, 0.03125};
  spec.reference_factor = 2;
  spec.parallelism = 1;
  const std::string serial = alpha_sweep(spec, ModelKind::NSAlpha, Calibration{}).csv();
  spec.parallelism = 3;
  const std::string threaded = alpha_sweep(spec, ModelKind::NSAlpha, Calibration{}).csv();
  CHECK(serial == threaded);
}

TEST_CASE("sweep csv has the versioned header and deterministic shape") {
  SweepSpec spec;
  spec.base = small_base();
  spec.base.initial.kind = InitialConditionSpec::Kind::Shear;
  spec.base.resolution = 8;
  spec.values = {0.25, 0.125, 0.0625, 0.03125};
  spec.reference_factor = 1;
  const SweepResult res = alpha_sweep(spec, ModelKind::SimplifiedBardina, Calibration{});
  const std::string csv = res.csv();
  CHECK(csv.rfind("# alphaflow sweep csv v1", 0) == 0);
  CHECK(csv.find("value,alpha,lambda_m,lambda_m1,m,error,") != std::string::npos);
  const std::string js = res.json();
  CHECK(js.find("\"kind\": \"alpha\"") != std::string::npos);
}

}  // TEST_SUITE
