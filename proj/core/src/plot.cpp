#include "co2dist/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 48.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double to_pixel(double v, double p0, double p1) const {
    return p0 + (v - lo) / (hi - lo) * (p1 - p0);
  }
};

Axis axis_for(const std::vector<double>& v) {
  Axis a;
  a.lo = *std::min_element(v.begin(), v.end());
  a.hi = *std::max_element(v.begin(), v.end());
  if (!(a.hi > a.lo)) {
    a.lo -= 0.5;
    a.hi += 0.5;
  }
  return a;
}

}  // namespace

PlotSeries qq_plot_data(std::span<const double> data) {
  if (data.empty()) throw InputError("qq plot: empty data");
  std::vector<double> logs;
  logs.reserve(data.size());
  for (double v : data) {
    if (!(v > 0.0)) throw InputError("qq plot: data must be strictly positive");
    logs.push_back(std::log(v));
  }
  std::stable_sort(logs.begin(), logs.end());
  const double n = static_cast<double>(logs.size());

  PlotSeries s;
  s.kind = PlotKind::qq;
  s.points.reserve(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double q = special::normal_quantile((static_cast<double>(i + 1) - 0.375) / (n + 0.25));
    s.points.push_back({q, logs[i]});
  }
  if (logs.size() == 1) {
    s.intercept = logs[0];
    s.slope = 0.0;
    return s;
  }
  double mx = 0.0, my = 0.0;
  for (const auto& p : s.points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : s.points) {
    sxy += (p.x - mx) * (p.y - my);
    sxx += (p.x - mx) * (p.x - mx);
  }
  s.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  s.intercept = my - s.slope * mx;
  return s;
}

PlotSeries rank_size_plot_data(std::span<const double> data, const ParamVector& fitted,
                               std::size_t grid_points) {
  if (data.empty()) throw InputError("rank-size plot: empty data");
  if (fitted.model() != ModelId::lognormal) {
    throw InputError("rank-size plot: fitted model must be LOG");
  }
  if (grid_points < 2) throw InputError("rank-size plot: need at least 2 grid points");
  std::vector<double> x(data.begin(), data.end());
  for (double v : x) {
    if (!(v > 0.0)) throw InputError("rank-size plot: data must be strictly positive");
  }
  std::stable_sort(x.begin(), x.end());
  const std::size_t n = x.size();
  const double np1 = static_cast<double>(n + 1);

  PlotSeries s;
  s.kind = PlotKind::rank_size;
  for (std::size_t i = 0; i < n; ++i) {
    s.points.push_back({x[i], static_cast<double>(n - i)});
  }
  const double l0 = std::log(x.front());
  const double l1 = std::log(x.back());
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const double gx = std::exp(l0 + t * (l1 - l0));
    s.curve.push_back({gx, np1 * survival(fitted, gx)});
  }
  return s;
}

void write_plot_csv(const PlotSeries& series, std::ostream& out) {
  out << "x,y,series\n";
  for (const auto& p : series.points) {
    out << csv::format_double(p.x) << ',' << csv::format_double(p.y) << ",data\n";
  }
  if (series.kind == PlotKind::qq) {
    for (const auto& p : series.points) {
      out << csv::format_double(p.x) << ','
          << csv::format_double(series.intercept + series.slope * p.x) << ",reference\n";
    }
  } else {
    for (const auto& p : series.curve) {
      out << csv::format_double(p.x) << ',' << csv::format_double(p.y) << ",fitted\n";
    }
  }
}

void write_plot_svg(const PlotSeries& series, const std::string& title, std::ostream& out) {
  const bool log_axes = series.kind == PlotKind::rank_size;
  auto tx = [&](double v) { return log_axes ? std::log10(v) : v; };
  std::vector<double> xs, ys;
  for (const auto& p : series.points) {
    xs.push_back(tx(p.x));
    ys.push_back(tx(p.y));
  }
  for (const auto& p : series.curve) {
    if (p.y > 0.0) {
      xs.push_back(tx(p.x));
      ys.push_back(tx(p.y));
    }
  }
  const Axis ax = axis_for(xs);
  const Axis ay = axis_for(ys);
  auto px = [&](double v) { return ax.to_pixel(v, kMargin, kWidth - kMargin / 2); };
  auto py = [&](double v) { return ay.to_pixel(v, kHeight - kMargin, kMargin / 2); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"16\" text-anchor=\"middle\" font-size=\"12\">"
      << escape_xml(title) << "</text>\n";
  out << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin / 2) << "\" width=\""
      << num(kWidth - 1.5 * kMargin) << "\" height=\"" << num(kHeight - 1.5 * kMargin)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  out << "<polyline fill=\"none\" stroke=\"red\" points=\"";
  if (series.kind == PlotKind::qq) {
    out << num(px(ax.lo)) << ',' << num(py(series.intercept + series.slope * ax.lo)) << ' '
        << num(px(ax.hi)) << ',' << num(py(series.intercept + series.slope * ax.hi));
  } else {
    bool first = true;
    for (const auto& p : series.curve) {
      if (!(p.y > 0.0)) continue;
      if (!first) out << ' ';
      out << num(px(tx(p.x))) << ',' << num(py(tx(p.y)));
      first = false;
    }
  }
  out << "\"/>\n";
  for (const auto& p : series.points) {
    out << "<circle cx=\"" << num(px(tx(p.x))) << "\" cy=\"" << num(py(tx(p.y)))
        << "\" r=\"2\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
}

std::string pvalue_class(double p, double alpha_hi, double alpha_lo) {
  if (std::isnan(p)) return "na";
  if (p > alpha_hi) return "white";
  if (p > alpha_lo) return "yellow";
  return "red";
}

void write_heatmap_svg(const HeatmapGrid& grid, const std::string& title, std::ostream& out,
                       double alpha_hi, double alpha_lo) {
  const std::size_t rows = grid.row_labels.size();
  const std::size_t cols = grid.column_labels.size();
  if (grid.values.size() != rows * cols) throw InputError("heatmap: value count mismatch");
  constexpr double cell_w = 36.0, cell_h = 14.0, left = 90.0, top = 40.0;
  const double width = left + cell_w * static_cast<double>(cols) + 10.0;
  const double height = top + cell_h * static_cast<double>(rows) + 10.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" font-size=\"10\">\n";
  out << "<text x=\"4\" y=\"14\" font-size=\"12\">" << escape_xml(title) << "</text>\n";
  for (std::size_t c = 0; c < cols; ++c) {
    out << "<text x=\"" << num(left + cell_w * (static_cast<double>(c) + 0.5)) << "\" y=\""
        << num(top - 4) << "\" text-anchor=\"middle\">" << escape_xml(grid.column_labels[c])
        << "</text>\n";
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = top + cell_h * static_cast<double>(r);
    out << "<text x=\"4\" y=\"" << num(y + cell_h - 3) << "\">" << escape_xml(grid.row_labels[r])
        << "</text>\n";
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string cls = pvalue_class(grid.values[r * cols + c], alpha_hi, alpha_lo);
      const char* fill = cls == "white" ? "#ffffff" : cls == "yellow" ? "#ffe84d"
                         : cls == "red"  ? "#e0301e" : "#bbbbbb";
      out << "<rect x=\"" << num(left + cell_w * static_cast<double>(c)) << "\" y=\"" << num(y)
          << "\" width=\"" << num(cell_w) << "\" height=\"" << num(cell_h) << "\" fill=\""
          << fill << "\" stroke=\"#888888\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace co2dist
