// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numbers>

#include "alphaflow/integrator.hpp"
#include "alphaflow/nonlinear.hpp"

using namespace alphaflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SimConfig bench_config(ModelKind kind, int n) {
  SimConfig cfg;
  cfg.model = kind;
  cfg.resolution = n;
  cfg.nu = 0.1;
  cfg.alpha = kind == ModelKind::NSE ? 0.0 : 0.1;
  cfg.seed = 7;
  cfg.initial.amplitude = 0.5;
  return cfg;
}

void BM_advective(benchmark::State& state) {
  auto lat = Lattice::create(kTwoPi, static_cast<int>(state.range(0)));
  BilinearWorkspace ws(lat);
  const SpectralVelocity u = random_smooth_field(lat, 1, 4.0, 1.0);
  const SpectralVelocity w = random_smooth_field(lat, 2, 4.0, 1.0);
  SpectralVelocity out(lat);
  for (auto _ : state) {
    ws.advective_into(u, w, out);
    benchmark::DoNotOptimize(out.x(0));
  }
}
BENCHMARK(BM_advective)->Arg(32)->Arg(64)->Arg(128);

void BM_rotational(benchmark::State& state) {
  auto lat = Lattice::create(kTwoPi, static_cast<int>(state.range(0)));
  BilinearWorkspace ws(lat);
  const SpectralVelocity u = random_smooth_field(lat, 1, 4.0, 1.0);
  const SpectralVelocity w = random_smooth_field(lat, 2, 4.0, 1.0);
  SpectralVelocity out(lat);
  for (auto _ : state) {
    ws.rotational_into(u, w, out);
    benchmark::DoNotOptimize(out.x(0));
  }
}
BENCHMARK(BM_rotational)->Arg(64);

void BM_model_rhs(benchmark::State& state) {
  const SimConfig cfg = bench_config(static_cast<ModelKind>(state.range(1)),
                                     static_cast<int>(state.range(0)));
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  ModelRhs rhs(lat, cfg);
  const SpectralVelocity u = make_initial_condition(lat, cfg);
  SpectralVelocity out(lat);
  for (auto _ : state) {
    rhs.nonlinear(u, out);
    benchmark::DoNotOptimize(out.x(0));
  }
}
BENCHMARK(BM_model_rhs)
    ->Args({64, static_cast<long>(ModelKind::NSE)})
    ->Args({64, static_cast<long>(ModelKind::LerayAlpha)})
    ->Args({64, static_cast<long>(ModelKind::NSAlpha)});

void BM_integrator_step(benchmark::State& state) {
  SimConfig cfg = bench_config(ModelKind::LerayAlpha, static_cast<int>(state.range(0)));
  const double dt = 1e-3;
  auto lat = Lattice::create(cfg.box_length, cfg.resolution);
  ModelRhs rhs(lat, cfg);
  SpectralVelocity u = make_initial_condition(lat, cfg);
  StepperConfig sc;
  sc.dt = dt;
  for (auto _ : state) {
    const std::vector<double> stops = {dt};
    advance(u, rhs, sc, 0.0, dt, stops, nullptr);
    benchmark::DoNotOptimize(u.x(0));
  }
}
BENCHMARK(BM_integrator_step)->Arg(64)->Arg(128);

void BM_pointwise_norms(benchmark::State& state) {
  auto lat = Lattice::create(kTwoPi, static_cast<int>(state.range(0)));
  PhysicalProbe probe(lat);
  const SpectralVelocity u = random_smooth_field(lat, 1, 4.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(probe.norms(u).linf);
  }
}
BENCHMARK(BM_pointwise_norms)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
