#pragma once

// Minimal standalone SVG line-plot emitter (no external processes, no
// fonts beyond the generic 'monospace' family).

#include <string>
#include <vector>

namespace deltaion {

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  std::string label;
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 480;
  std::vector<SvgSeries> series;

  void add(std::vector<double> x, std::vector<double> y, std::string color,
           std::string label);
  void write(const std::string& path) const;
};

}  // namespace deltaion
