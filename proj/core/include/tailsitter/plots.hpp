#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailsitter/simulate.hpp"

namespace tailsitter {

// Minimal line-chart schema: one SVG per chart, x shared by all series, optional horizontal
// reference lines, optional fixed y-range (values outside are clipped at the frame).
struct Series {
  std::string name;
  std::vector<double> x, y;
  bool step = false;  // draw as a staircase
};

struct HLine {
  double y;
  std::string label;
};

struct LineChart {
  std::string title, x_label, y_label;
  std::vector<Series> series;
  std::vector<HLine> hlines;
  std::optional<double> y_min, y_max;
};

struct Bounds {
  double x0, x1, y0, y1;
};

/// Axis range covering every sample and reference line; degenerate spans are padded.
Bounds chart_bounds(const LineChart& chart);
std::string render_svg(const LineChart& chart, int width = 900, int height = 420);
void write_svg(const LineChart& chart, const std::string& path);

struct PlotOptions {
  double v_enter = 250.0;
  double v_exit = 400.0;
};

/// position, attitude, commands, elevons, lyapunov and jumps charts plus log.csv and jumps.csv.
/// Returns the written paths. Throws Error on IO failure or an empty log.
std::vector<std::string> emit_plots(const SimResult& result, const std::string& out_dir, const PlotOptions& opts = {});

}  // namespace tailsitter
