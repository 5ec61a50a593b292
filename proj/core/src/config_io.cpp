// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/config_io.hpp"

#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace alphaflow {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

void check_keys(const json& j, const std::string& scope, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      fail(scope.empty() ? item.key() : scope + "." + item.key(), "unknown field");
    }
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(key, "wrong type");
  }
}

InitialConditionSpec parse_initial(const json& j) {
  check_keys(j, "initial_condition",
             {"kind", "amplitude", "spectrum_decay", "resolution"});
  InitialConditionSpec ic;
  const std::string kind = get_or<std::string>(j, "kind", "random_smooth");
  if (kind == "shear") {
    ic.kind = InitialConditionSpec::Kind::Shear;
  } else if (kind == "taylor_green") {
    ic.kind = InitialConditionSpec::Kind::TaylorGreen;
  } else if (kind == "random_smooth") {
    ic.kind = InitialConditionSpec::Kind::RandomSmooth;
  } else {
    fail("initial_condition.kind", "expected shear|taylor_green|random_smooth");
  }
  ic.amplitude = get_or<double>(j, "amplitude", ic.amplitude);
  ic.spectrum_decay = get_or<double>(j, "spectrum_decay", ic.spectrum_decay);
  ic.resolution = get_or<int>(j, "resolution", ic.resolution);
  return ic;
}

ForcingSpec parse_forcing(const json& j) {
  check_keys(j, "forcing", {"kind", "amplitude", "shell", "spectrum_decay", "resolution"});
  ForcingSpec f;
  const std::string kind = get_or<std::string>(j, "kind", "zero");
  if (kind == "zero") {
    f.kind = ForcingSpec::Kind::Zero;
  } else if (kind == "single_shell") {
    f.kind = ForcingSpec::Kind::SingleShell;
  } else if (kind == "random_smooth") {
    f.kind = ForcingSpec::Kind::RandomSmooth;
  } else {
    fail("forcing.kind", "expected zero|single_shell|random_smooth");
  }
  f.amplitude = get_or<double>(j, "amplitude", f.amplitude);
  f.shell = get_or<int>(j, "shell", f.shell);
  f.spectrum_decay = get_or<double>(j, "spectrum_decay", f.spectrum_decay);
  f.resolution = get_or<int>(j, "resolution", f.resolution);
  return f;
}

SimConfig parse_sim(const json& j) {
  check_keys(j, "",
             {"model", "box_length", "resolution", "nu_viscosity", "alpha_length",
              "galerkin_cutoff", "time_horizon", "time_step", "sample_count", "seed",
              "initial_condition", "forcing"});
  SimConfig cfg;
  if (j.contains("model")) cfg.model = model_from_name(j.at("model").get<std::string>());
  cfg.box_length = get_or<double>(j, "box_length", cfg.box_length);
  cfg.resolution = get_or<int>(j, "resolution", cfg.resolution);
  cfg.nu = get_or<double>(j, "nu_viscosity", cfg.nu);
  cfg.alpha = get_or<double>(j, "alpha_length", cfg.alpha);
  cfg.galerkin_cutoff = get_or<double>(j, "galerkin_cutoff", cfg.galerkin_cutoff);
  cfg.t_end = get_or<double>(j, "time_horizon", cfg.t_end);
  cfg.dt = get_or<double>(j, "time_step", cfg.dt);
  cfg.sample_count = get_or<int>(j, "sample_count", cfg.sample_count);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  if (j.contains("initial_condition")) cfg.initial = parse_initial(j.at("initial_condition"));
  if (j.contains("forcing")) cfg.forcing = parse_forcing(j.at("forcing"));
  cfg.validate();
  return cfg;
}

json sim_json(const SimConfig& cfg) {
  json ic{{"amplitude", cfg.initial.amplitude},
          {"spectrum_decay", cfg.initial.spectrum_decay},
          {"resolution", cfg.initial.resolution}};
  switch (cfg.initial.kind) {
    case InitialConditionSpec::Kind::Shear: ic["kind"] = "shear"; break;
    case InitialConditionSpec::Kind::TaylorGreen: ic["kind"] = "taylor_green"; break;
    case InitialConditionSpec::Kind::RandomSmooth: ic["kind"] = "random_smooth"; break;
  }
  json fc{{"amplitude", cfg.forcing.amplitude},
          {"shell", cfg.forcing.shell},
          {"spectrum_decay", cfg.forcing.spectrum_decay},
          {"resolution", cfg.forcing.resolution}};
  switch (cfg.forcing.kind) {
    case ForcingSpec::Kind::Zero: fc["kind"] = "zero"; break;
    case ForcingSpec::Kind::SingleShell: fc["kind"] = "single_shell"; break;
    case ForcingSpec::Kind::RandomSmooth: fc["kind"] = "random_smooth"; break;
  }
  return json{{"model", model_name(cfg.model)},
              {"box_length", cfg.box_length},
              {"resolution", cfg.resolution},
              {"nu_viscosity", cfg.nu},
              {"alpha_length", cfg.alpha},
              {"galerkin_cutoff", cfg.galerkin_cutoff},
              {"time_horizon", cfg.t_end},
              {"time_step", cfg.dt},
              {"sample_count", cfg.sample_count},
              {"seed", cfg.seed},
              {"initial_condition", ic},
              {"forcing", fc}};
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_sim(j);
}

std::string sim_config_json(const SimConfig& cfg) { return sim_json(cfg).dump(2); }

SweepSpec parse_sweep_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sweep config: invalid JSON: ") + e.what());
  }
  check_keys(j, "",
             {"base", "values", "reference_factor", "parallelism", "proxy_check",
              "richardson_tol", "calibration"});
  SweepSpec spec;
  if (!j.contains("base")) fail("base", "missing run configuration");
  spec.base = parse_sim(j.at("base"));
  if (!j.contains("values")) fail("values", "missing swept value list");
  spec.values = j.at("values").get<std::vector<double>>();
  if (spec.values.empty()) fail("values", "empty value list");
  spec.reference_factor = get_or<int>(j, "reference_factor", spec.reference_factor);
  if (spec.reference_factor < 1) fail("reference_factor", "must be >= 1");
  spec.parallelism = get_or<int>(j, "parallelism", spec.parallelism);
  spec.proxy_check = get_or<bool>(j, "proxy_check", spec.proxy_check);
  spec.richardson_tol = get_or<double>(j, "richardson_tol", spec.richardson_tol);
  return spec;
}

std::string sweep_spec_json(const SweepSpec& spec) {
  json j{{"base", sim_json(spec.base)},
         {"values", spec.values},
         {"reference_factor", spec.reference_factor},
         {"parallelism", spec.parallelism},
         {"proxy_check", spec.proxy_check},
         {"richardson_tol", spec.richardson_tol}};
  return j.dump(2);
}

Calibration parse_calibration(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("calibration: invalid JSON: ") + e.what());
  }
  check_keys(j, "calibration",
             {"interpolated", "linf_advector", "grad_linf", "linf_test", "rotational", "h2_pairing", "brezis_gallouet", "log_advector",
              "log_test", "ladyzhenskaya", "composite"});
  Calibration c;
  c.interpolated = get_or<double>(j, "interpolated", c.interpolated);
  c.linf_advector = get_or<double>(j, "linf_advector", c.linf_advector);
  c.grad_linf = get_or<double>(j, "grad_linf", c.grad_linf);
  c.linf_test = get_or<double>(j, "linf_test", c.linf_test);
  c.rotational = get_or<double>(j, "rotational", c.rotational);
  c.h2_pairing = get_or<double>(j, "h2_pairing", c.h2_pairing);
  c.brezis_gallouet = get_or<double>(j, "brezis_gallouet", c.brezis_gallouet);
  c.log_advector = get_or<double>(j, "log_advector", c.log_advector);
  c.log_test = get_or<double>(j, "log_test", c.log_test);
  c.ladyzhenskaya = get_or<double>(j, "ladyzhenskaya", c.ladyzhenskaya);
  c.composite = get_or<double>(j, "composite", c.composite);
  return c;
}

}  // namespace alphaflow
