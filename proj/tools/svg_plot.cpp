// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace alphaflow::tools {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string svg_loglog(const std::vector<PlotSeries>& series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel) {
  const int W = 640, H = 480;
  const int mL = 70, mR = 20, mT = 40, mB = 55;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) xmax = xmin * 10.0;
  if (!(ymin < ymax)) ymax = ymin * 10.0;
  const double lx0 = std::log10(xmin) - 0.1, lx1 = std::log10(xmax) + 0.1;
  const double ly0 = std::log10(ymin) - 0.2, ly1 = std::log10(ymax) + 0.2;

  auto px = [&](double x) {
    return mL + (std::log10(x) - lx0) / (lx1 - lx0) * (W - mL - mR);
  };
  auto py = [&](double y) {
    return H - mB - (std::log10(y) - ly0) / (ly1 - ly0) * (H - mT - mB);
  };

  std::string svg;
  svg += "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(W) + "' height='" +
         std::to_string(H) + "'>\n";
  svg += "<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + std::to_string(W / 2) + "' y='24' text-anchor='middle' font-size='16'>" +
         title + "</text>\n";

  // Frame and decade grid.
  svg += "<rect x='" + std::to_string(mL) + "' y='" + std::to_string(mT) + "' width='" +
         std::to_string(W - mL - mR) + "' height='" + std::to_string(H - mT - mB) +
         "' fill='none' stroke='black'/>\n";
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double x = std::pow(10.0, d);
    svg += "<line x1='" + num(px(x)) + "' y1='" + std::to_string(mT) + "' x2='" + num(px(x)) +
           "' y2='" + std::to_string(H - mB) + "' stroke='#dddddd'/>\n";
    svg += "<text x='" + num(px(x)) + "' y='" + std::to_string(H - mB + 18) +
           "' text-anchor='middle' font-size='11'>1e" + std::to_string(d) + "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double y = std::pow(10.0, d);
    svg += "<line x1='" + std::to_string(mL) + "' y1='" + num(py(y)) + "' x2='" +
           std::to_string(W - mR) + "' y2='" + num(py(y)) + "' stroke='#dddddd'/>\n";
    svg += "<text x='" + std::to_string(mL - 6) + "' y='" + num(py(y) + 4) +
           "' text-anchor='end' font-size='11'>1e" + std::to_string(d) + "</text>\n";
  }
  svg += "<text x='" + std::to_string((W + mL - mR) / 2) + "' y='" + std::to_string(H - 12) +
         "' text-anchor='middle' font-size='13'>" + xlabel + "</text>\n";
  svg += "<text x='16' y='" + std::to_string((H + mT - mB) / 2) +
         "' text-anchor='middle' font-size='13' transform='rotate(-90 16 " +
         std::to_string((H + mT - mB) / 2) + ")'>" + ylabel + "</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    if (s.line) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
        pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
      }
      svg += "<polyline points='" + pts + "' fill='none' stroke='" + s.color +
             "' stroke-width='1.5'/>\n";
    } else {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
        svg += "<circle cx='" + num(px(s.x[i])) + "' cy='" + num(py(s.y[i])) +
               "' r='4' fill='" + s.color + "'/>\n";
      }
    }
    svg += "<text x='" + std::to_string(W - mR - 8) + "' y='" +
           std::to_string(mT + 16 + 16 * legend_row) + "' text-anchor='end' font-size='12' fill='" +
           s.color + "'>" + s.label + "</text>\n";
    ++legend_row;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace alphaflow::tools
