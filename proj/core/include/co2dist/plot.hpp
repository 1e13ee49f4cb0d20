#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "co2dist/distributions.hpp"

namespace co2dist {

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
};

enum class PlotKind { qq, rank_size };

// Plot data for one figure panel. For Q-Q plots `points` are (normal score,
// sorted log datum) and `reference` holds the line y = intercept + slope * x.
// For rank-size plots `points` are the empirical (x_(i), N + 1 - i) pairs and
// `curve` the fitted (x, (N + 1) S(x)) on a log grid.
struct PlotSeries {
  PlotKind kind = PlotKind::qq;
  std::vector<PlotPoint> points;
  std::vector<PlotPoint> curve;
  double intercept = 0.0;
  double slope = 1.0;
};

// Blom plotting positions; the reference line is the least-squares line
// through the points (exact data lie on it).
PlotSeries qq_plot_data(std::span<const double> data);

// `fitted` must be a LOG model. `grid_points` >= 2 points between the sample
// extremes, evenly spaced in log x.
PlotSeries rank_size_plot_data(std::span<const double> data, const ParamVector& fitted,
                               std::size_t grid_points = 200);

// CSV with header `x,y,series`; series is `data`, `reference` or `fitted`.
void write_plot_csv(const PlotSeries& series, std::ostream& out);

// Minimal standalone SVG scatter with the reference line or fitted curve.
// Rank-size plots are drawn on log-log axes.
void write_plot_svg(const PlotSeries& series, const std::string& title, std::ostream& out);

// Heatmap cell: a p-value coloured white (p > 0.05), yellow (0.01 < p <= 0.05)
// or red (p <= 0.01); NaN cells are grey.
struct HeatmapGrid {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<double> values;  // row-major
};

// Colour class for a p-value at the two levels (alpha_hi > alpha_lo).
std::string pvalue_class(double p, double alpha_hi = 0.05, double alpha_lo = 0.01);

void write_heatmap_svg(const HeatmapGrid& grid, const std::string& title, std::ostream& out,
                       double alpha_hi = 0.05, double alpha_lo = 0.01);

}  // namespace co2dist
