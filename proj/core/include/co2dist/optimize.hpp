#pragma once

#include <functional>
#include <vector>

namespace co2dist::optimize {

struct SimplexOptions {
  // Stop when every vertex lies within `tolerance * max(1, |best|)` of the
  // best vertex in each coordinate.
  double tolerance = 1e-10;
  int max_evaluations = 5000;
  // Initial edge length along each coordinate.
  double initial_step = 0.1;
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead downhill simplex minimization (standard coefficients 1, 2,
// 0.5, 0.5). The objective may return +inf to reject a point.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, const SimplexOptions& options = {});

struct RootResult {
  double root = 0.0;
  int iterations = 0;
};

// Brent's method on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign
// (or one of them zero). Throws NumericalError when the bracket is invalid.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double x_tolerance = 0.0, int max_iterations = 500);

}  // namespace co2dist::optimize
