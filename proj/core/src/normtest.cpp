#include "co2dist/normtest.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "co2dist/error.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

using special::normal_cdf;
using special::normal_log_cdf;
using special::normal_quantile;

// sum c[k] x^k
template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double result = 0.0;
  for (std::size_t k = N; k-- > 0;) result = result * x + c[k];
  return result;
}

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double m2 = 0.0;  // central moments, n denominator
  double m3 = 0.0;
  double m4 = 0.0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  m.n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  m.mean = sum / m.n;
  for (double v : x) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  m.sd = std::sqrt(m.m2 / (m.n - 1.0));
  m.m2 /= m.n;
  m.m3 /= m.n;
  m.m4 /= m.n;
  return m;
}

TestReport shapiro_wilk(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const auto a = shapiro_wilk_coefficients(n);
  const double range = x.back() - x.front();
  const double an = static_cast<double>(n);

  // W as the squared correlation between the antisymmetric coefficient vector
  // and the range-scaled data, in the 1 - W form.
  auto coefficient = [&](std::size_t i) {
    const std::size_t j = n - 1 - i;
    if (i == j) return 0.0;
    return i < j ? -a[i] : a[j];
  };
  double sa = 0.0, sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += coefficient(i);
    sx += x[i] / range;
  }
  sa /= an;
  sx /= an;
  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double asa = coefficient(i) - sa;
    const double xsx = x[i] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  TestReport r;
  r.test = NormalityTest::shapiro_wilk;
  r.statistic = w;
  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;  // 6 / pi
    constexpr double stqr = 1.04719755119660;  // pi / 3
    r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
    return r;
  }
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[] = {-2.273, 0.459};
  double y = std::log(w1);
  const double xx = std::log(an);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    m = poly(c3, an);
    s = std::exp(poly(c4, an));
  } else {
    m = poly(c5, xx);
    s = std::exp(poly(c6, xx));
  }
  r.p_value = special::normal_sf((y - m) / s);
  return r;
}

TestReport shapiro_francia(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
  }
  double mx = 0.0, mm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    mm += m[i];
  }
  mx /= an;
  mm /= an;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = m[i] - mm;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double w = sxy * sxy / (sxx * syy);
  const double u = std::log(an);
  const double v = std::log(u);
  const double mu = -1.2725 + 1.0521 * (v - u);
  const double sig = 1.0308 - 0.26758 * (v + 2.0 / u);
  const double z = (std::log1p(-w) - mu) / sig;
  return {NormalityTest::shapiro_francia, w, special::normal_sf(z)};
}

TestReport lilliefors(const std::vector<double>& x, const Moments& mo) {
  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  double d_plus = -1.0, d_minus = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = normal_cdf((x[i] - mo.mean) / mo.sd);
    d_plus = std::max(d_plus, static_cast<double>(i + 1) / an - p);
    d_minus = std::max(d_minus, p - static_cast<double>(i) / an);
  }
  const double d = std::max(d_plus, d_minus);
  // Dallal-Wilkinson approximation; sizes above 100 are rescaled to n = 100.
  double kd = d, nd = an;
  if (n > 100) {
    kd = d * std::pow(an / 100.0, 0.49);
    nd = 100.0;
  }
  double p = std::exp(-7.01256 * kd * kd * (nd + 2.78019) + 2.99587 * kd * std::sqrt(nd + 2.78019) -
                      0.122119 + 0.974598 / std::sqrt(nd) + 1.67997 / nd);
  if (p > 0.1) {
    const double kk = (std::sqrt(an) - 0.01 + 0.85 / std::sqrt(an)) * d;
    if (kk <= 0.302) {
      p = 1.0;
    } else if (kk <= 0.5) {
      p = 2.76773 - 19.828315 * kk + 80.709644 * kk * kk - 138.55152 * std::pow(kk, 3) +
          81.218052 * std::pow(kk, 4);
    } else if (kk <= 0.9) {
      p = -4.901232 + 40.662806 * kk - 97.490286 * kk * kk + 94.029866 * std::pow(kk, 3) -
          32.355711 * std::pow(kk, 4);
    } else if (kk <= 1.31) {
      p = 6.198765 - 19.558097 * kk + 23.186922 * kk * kk - 12.234627 * std::pow(kk, 3) +
          2.423045 * std::pow(kk, 4);
    } else {
      p = 0.0;
    }
  }
  return {NormalityTest::lilliefors, d, std::clamp(p, 0.0, 1.0)};
}

TestReport cramer_von_mises(const std::vector<double>& x, const Moments& mo) {
  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  double w = 1.0 / (12.0 * an);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = normal_cdf((x[i] - mo.mean) / mo.sd);
    const double e = p - (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * an);
    w += e * e;
  }
  const double ww = (1.0 + 0.5 / an) * w;
  double p;
  if (ww < 0.0275) {
    p = 1.0 - std::exp(-13.953 + 775.5 * ww - 12542.61 * ww * ww);
  } else if (ww < 0.051) {
    p = 1.0 - std::exp(-5.903 + 179.546 * ww - 1515.29 * ww * ww);
  } else if (ww < 0.092) {
    p = std::exp(0.886 - 31.62 * ww + 10.897 * ww * ww);
  } else if (ww < 1.1) {
    p = std::exp(1.111 - 34.242 * ww + 12.832 * ww * ww);
  } else {
    p = 7.37e-10;
  }
  return {NormalityTest::cramer_von_mises, w, std::clamp(p, 0.0, 1.0)};
}

TestReport anderson_darling(const std::vector<double>& x, const Moments& mo) {
  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lower = normal_log_cdf((x[i] - mo.mean) / mo.sd);
    const double upper = normal_log_cdf(-(x[n - 1 - i] - mo.mean) / mo.sd);
    h += (2.0 * static_cast<double>(i + 1) - 1.0) * (lower + upper);
  }
  const double a = -an - h / an;
  const double aa = (1.0 + 0.75 / an + 2.25 / (an * an)) * a;
  double p;
  if (aa < 0.2) {
    p = 1.0 - std::exp(-13.436 + 101.14 * aa - 223.73 * aa * aa);
  } else if (aa < 0.34) {
    p = 1.0 - std::exp(-8.318 + 42.796 * aa - 59.938 * aa * aa);
  } else if (aa < 0.6) {
    p = std::exp(0.9177 - 4.279 * aa - 1.38 * aa * aa);
  } else if (aa < 10.0) {
    p = std::exp(1.2937 - 5.709 * aa + 0.0186 * aa * aa);
  } else {
    p = 3.7e-24;
  }
  return {NormalityTest::anderson_darling, a, std::clamp(p, 0.0, 1.0)};
}

TestReport dagostino_pearson(const Moments& mo) {
  const double n = mo.n;
  // Skewness z-score.
  const double b1 = mo.m3 / std::pow(mo.m2, 1.5);
  const double y = b1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(std::log(std::sqrt(w2)));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  const double ya = y / alpha;
  const double z_skew = delta * std::log(ya + std::sqrt(ya * ya + 1.0));

  // Kurtosis z-score.
  const double b2 = mo.m4 / (mo.m2 * mo.m2);
  const double mean_b2 = 3.0 * (n - 1.0) / (n + 1.0);
  const double var_b2 =
      24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double xk = (b2 - mean_b2) / std::sqrt(var_b2);
  const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                            std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double denom = 1.0 + xk * std::sqrt(2.0 / (a - 4.0));
  const double z_kurt = ((1.0 - 2.0 / (9.0 * a)) - std::cbrt((1.0 - 2.0 / a) / denom)) /
                        std::sqrt(2.0 / (9.0 * a));

  const double k2 = z_skew * z_skew + z_kurt * z_kurt;
  return {NormalityTest::dagostino_pearson, k2, special::chi_square_sf(k2, 2.0)};
}

TestReport jarque_bera(const Moments& mo) {
  const double s = mo.m3 / std::pow(mo.m2, 1.5);
  const double k = mo.m4 / (mo.m2 * mo.m2);
  const double jb = mo.n * (s * s / 6.0 + (k - 3.0) * (k - 3.0) / 24.0);
  return {NormalityTest::jarque_bera, jb, special::chi_square_sf(jb, 2.0)};
}

}  // namespace

std::string_view test_code(NormalityTest test) {
  switch (test) {
    case NormalityTest::shapiro_wilk: return "SW";
    case NormalityTest::shapiro_francia: return "SF";
    case NormalityTest::lilliefors: return "LL";
    case NormalityTest::cramer_von_mises: return "CVM";
    case NormalityTest::anderson_darling: return "AD";
    case NormalityTest::dagostino_pearson: return "DP";
    case NormalityTest::jarque_bera: return "JB";
  }
  return "?";
}

std::optional<NormalityTest> parse_test_code(std::string_view code) {
  for (auto t : kAllNormalityTests) {
    if (test_code(t) == code) return t;
  }
  return std::nullopt;
}

SizeRange valid_size_range(NormalityTest test) {
  switch (test) {
    case NormalityTest::shapiro_wilk: return {3, 5000};
    case NormalityTest::shapiro_francia: return {8, 5000};
    case NormalityTest::dagostino_pearson: return {20, static_cast<std::size_t>(-1)};
    default: return {8, static_cast<std::size_t>(-1)};
  }
}

std::vector<double> shapiro_wilk_coefficients(std::size_t n) {
  if (n < 3) throw InputError("Shapiro-Wilk coefficients need n >= 3");
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
    return a;
  }
  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  const double an = static_cast<double>(n);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    a[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += a[i] * a[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(c1, rsn) - a[0] / ssumm2;
  std::size_t first_scaled;
  double fac;
  if (n > 5) {
    first_scaled = 2;
    const double a2 = -a[1] / ssumm2 + poly(c2, rsn);
    fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    first_scaled = 1;
    fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first_scaled; i < half; ++i) a[i] = -a[i] / fac;
  return a;
}

TestReport normality_test(NormalityTest test, std::span<const double> values) {
  const auto range = valid_size_range(test);
  if (values.size() < range.min || values.size() > range.max) {
    throw InputError(std::string(test_code(test)) + ": sample size " +
                     std::to_string(values.size()) + " outside valid range");
  }
  std::vector<double> x(values.begin(), values.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw InputError(std::string(test_code(test)) + ": non-finite value");
  }
  std::stable_sort(x.begin(), x.end());
  const auto mo = moments(x);
  if (!(x.back() - x.front() > 1e-14 * std::max(1.0, std::fabs(mo.mean))) || !(mo.m2 > 0.0)) {
    throw InputError(std::string(test_code(test)) + ": data have zero range");
  }

  TestReport r;
  switch (test) {
    case NormalityTest::shapiro_wilk: r = shapiro_wilk(x); break;
    case NormalityTest::shapiro_francia: r = shapiro_francia(x); break;
    case NormalityTest::lilliefors: r = lilliefors(x, mo); break;
    case NormalityTest::cramer_von_mises: r = cramer_von_mises(x, mo); break;
    case NormalityTest::anderson_darling: r = anderson_darling(x, mo); break;
    case NormalityTest::dagostino_pearson: r = dagostino_pearson(mo); break;
    case NormalityTest::jarque_bera: r = jarque_bera(mo); break;
  }
  r.test = test;
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.reject_05 = r.p_value < 0.05;
  r.reject_01 = r.p_value < 0.01;
  return r;
}

TestReport test_lognormality(NormalityTest test, std::span<const double> data) {
  std::vector<double> logs;
  logs.reserve(data.size());
  for (double v : data) {
    if (!(v > 0.0)) throw InputError(std::string(test_code(test)) + ": non-positive datum");
    logs.push_back(std::log(v));
  }
  return normality_test(test, logs);
}

}  // namespace co2dist
