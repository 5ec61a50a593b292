// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "alphaflow/experiments.hpp"
#include "alphaflow/models.hpp"

namespace alphaflow {

inline constexpr const char* kVersion = "0.1.0";

/// Parses a run configuration from JSON text. Field names carry units
/// (nu_viscosity, alpha_length, time_horizon, time_step). Unknown fields are
/// rejected; errors name the offending field.
SimConfig parse_sim_config(const std::string& text);
std::string sim_config_json(const SimConfig& cfg);

/// Sweep configuration: a base run plus swept values and reference policy.
SweepSpec parse_sweep_spec(const std::string& text);
std::string sweep_spec_json(const SweepSpec& spec);

/// Optional calibration overrides embedded in a sweep config.
Calibration parse_calibration(const std::string& text);

}  // namespace alphaflow
