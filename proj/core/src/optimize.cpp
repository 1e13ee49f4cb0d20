#include "co2dist/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "co2dist/error.hpp"

namespace co2dist::optimize {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool simplex_small(const std::vector<std::vector<double>>& vertices, std::size_t best,
                   double tolerance) {
  const auto& b = vertices[best];
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::fabs(v));
  for (const auto& v : vertices) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (std::fabs(v[k] - b[k]) > tolerance * scale) return false;
    }
  }
  return true;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, const SimplexOptions& options) {
  const std::size_t dim = start.size();
  SimplexResult result;
  if (dim == 0) {
    result.point = start;
    result.value = objective(start);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    const double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> vertices(dim + 1, start);
  for (std::size_t k = 0; k < dim; ++k) {
    vertices[k + 1][k] += options.initial_step * std::max(1.0, std::fabs(start[k]));
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(vertices[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  bool converged = false;
  while (evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];
    if (std::isfinite(values[best]) && simplex_small(vertices, best, options.tolerance)) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += vertices[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t k = 0; k < dim; ++k) {
      trial[k] = centroid[k] + (centroid[k] - vertices[worst][k]);
    }
    const double reflected = eval(trial);
    if (reflected < values[best]) {
      for (std::size_t k = 0; k < dim; ++k) {
        trial2[k] = centroid[k] + 2.0 * (centroid[k] - vertices[worst][k]);
      }
      const double expanded = eval(trial2);
      if (expanded < reflected) {
        vertices[worst] = trial2;
        values[worst] = expanded;
      } else {
        vertices[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      vertices[worst] = trial;
      values[worst] = reflected;
      continue;
    }
    // Contraction, outside if the reflection improved on the worst vertex.
    const bool outside = reflected < values[worst];
    for (std::size_t k = 0; k < dim; ++k) {
      trial2[k] = outside ? centroid[k] + 0.5 * (trial[k] - centroid[k])
                          : centroid[k] + 0.5 * (vertices[worst][k] - centroid[k]);
    }
    const double contracted = eval(trial2);
    if (contracted < (outside ? reflected : values[worst])) {
      vertices[worst] = trial2;
      values[worst] = contracted;
      continue;
    }
    // Shrink towards the best vertex.
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        vertices[i][k] = vertices[best][k] + 0.5 * (vertices[i][k] - vertices[best][k]);
      }
      values[i] = eval(vertices[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.point = vertices[best];
  result.value = values[best];
  result.evaluations = evaluations;
  result.converged = converged;
  return result;
}

RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double x_tolerance, int max_iterations) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "brent_root: no sign change on [" << lo << ", " << hi << "]: f(lo) = " << fa
        << ", f(hi) = " << fb;
    throw NumericalError(msg.str());
  }
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * kEps * std::fabs(b) + 0.5 * x_tolerance;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return {b, iter};
    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return {b, max_iterations};
}

}  // namespace co2dist::optimize
