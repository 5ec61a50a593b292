// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace alphaflow::tools {

struct PlotSeries {
  std::vector<double> x, y;
  std::string label;
  std::string color = "#1f77b4";
  bool line = false;  // scatter otherwise
};

/// Minimal hand-written log-log scatter plot with optional fitted line and
/// bound overlay. No dependencies; returns the SVG document.
std::string svg_loglog(const std::vector<PlotSeries>& series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel);

}  // namespace alphaflow::tools
