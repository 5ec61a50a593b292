// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "alphaflow/config_io.hpp"

using namespace alphaflow;

TEST_SUITE("config") {

TEST_CASE("run config round-trips through json") {
  SimConfig cfg;
  cfg.model = ModelKind::NSAlpha;
  cfg.resolution = 32;
  cfg.nu = 0.25;
  cfg.alpha = 0.125;
  cfg.t_end = 2.5;
  cfg.dt = 5e-4;
  cfg.seed = 987;
  cfg.initial.kind = InitialConditionSpec::Kind::TaylorGreen;
  cfg.initial.amplitude = 1.5;
  cfg.forcing.kind = ForcingSpec::Kind::SingleShell;
  cfg.forcing.shell = 2;
  cfg.forcing.amplitude = 0.1;

  const SimConfig back = parse_sim_config(sim_config_json(cfg));
  CHECK(back.model == cfg.model);
  CHECK(back.resolution == cfg.resolution);
  CHECK(back.nu == cfg.nu);
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.t_end == cfg.t_end);
  CHECK(back.dt == cfg.dt);
  CHECK(back.seed == cfg.seed);
  CHECK(back.initial.kind == cfg.initial.kind);
  CHECK(back.forcing.kind == cfg.forcing.kind);
  CHECK(back.forcing.shell == cfg.forcing.shell);
}

TEST_CASE("field-level diagnostics") {
  CHECK_THROWS_WITH_AS(parse_sim_config(R"({"nu_viscosity": -1})"),
                       "nu_viscosity: must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_sim_config(R"({"resolution": 9})"),
                       "resolution: must be an even integer >= 4", std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_sim_config(R"({"viscosity": 1.0})"),
                       "config field 'viscosity': unknown field", std::invalid_argument);
  CHECK_THROWS_AS(parse_sim_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sim_config(R"({"model": "euler"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sim_config(R"({"time_step": "fast"})"), std::invalid_argument);
}

TEST_CASE("sweep spec parsing") {
  const char* text = R"({
    "base": {"model": "leray_alpha", "resolution": 16, "alpha_length": 0.2},
    "values": [0.25, 0.125],
    "reference_factor": 2,
    "proxy_check": false
  })";
  const SweepSpec spec = parse_sweep_spec(text);
  CHECK(spec.base.model == ModelKind::LerayAlpha);
  CHECK(spec.values.size() == 2);
  CHECK(spec.reference_factor == 2);
  CHECK(!spec.proxy_check);

  CHECK_THROWS_AS(parse_sweep_spec(R"({"values": [1.0]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_spec(R"({"base": {}, "values": []})"), std::invalid_argument);
  const SweepSpec back = parse_sweep_spec(sweep_spec_json(spec));
  CHECK(back.values == spec.values);
}

TEST_CASE("calibration overrides") {
  const Calibration c = parse_calibration(R"({"composite": 2.5, "h2_pairing": 0.7})");
  CHECK(c.composite == 2.5);
  CHECK(c.h2_pairing == 0.7);
  CHECK(c.interpolated == 1.0);
  CHECK_THROWS_AS(parse_calibration(R"({"bogus": 1})"), std::invalid_argument);
}

}  // TEST_SUITE
