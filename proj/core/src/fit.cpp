#include "co2dist/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>

#include "co2dist/error.hpp"
#include "co2dist/optimize.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Theta = std::array<double, 2>;

// Sorted sample with the sufficient statistics the likelihoods reuse.
struct Sample {
  std::vector<double> x;
  std::vector<double> log_x;
  double n = 0.0;
  double sum_x = 0.0;
  double sum_log = 0.0;
  double mean_log = 0.0;
  double centered_ss_log = 0.0;  // sum (log x - mean log)^2

  explicit Sample(std::span<const double> data) : x(data.begin(), data.end()) {
    std::sort(x.begin(), x.end());
    log_x.reserve(x.size());
    for (double v : x) {
      sum_x += v;
      log_x.push_back(std::log(v));
      sum_log += log_x.back();
    }
    n = static_cast<double>(x.size());
    mean_log = sum_log / n;
    for (double l : log_x) centered_ss_log += (l - mean_log) * (l - mean_log);
  }
};

double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

bool feasible(ModelId model, const Theta& t) {
  const bool first_ok = model == ModelId::lognormal ? std::isfinite(t[0]) : (t[0] > 0.0 && std::isfinite(t[0]));
  if (model == ModelId::exponential) return first_ok;
  return first_ok && t[1] > 0.0 && std::isfinite(t[1]);
}

double loglik(ModelId model, const Theta& t, const Sample& s) {
  if (!feasible(model, t)) return -kInf;
  const double n = s.n;
  switch (model) {
    case ModelId::exponential:
      return -n * std::log(t[0]) - s.sum_x / t[0];
    case ModelId::lognormal: {
      const double mu = t[0], sig = t[1];
      const double d = s.mean_log - mu;
      const double ss = s.centered_ss_log + n * d * d;
      return -s.sum_log - n * std::log(sig) - n * special::kLogSqrt2Pi - ss / (2.0 * sig * sig);
    }
    case ModelId::gamma: {
      const double b = t[0], sig = t[1];
      return -n * std::lgamma(b) - n * b * std::log(sig) + (b - 1.0) * s.sum_log - s.sum_x / sig;
    }
    case ModelId::weibull: {
      const double a = t[0], sig = t[1];
      const double log_sig = std::log(sig);
      double sum_pow = 0.0;
      for (double l : s.log_x) sum_pow += std::exp(a * (l - log_sig));
      return n * std::log(a / sig) + (a - 1.0) * (s.sum_log - n * log_sig) - sum_pow;
    }
    case ModelId::fisk: {
      const double b = t[0], sig = t[1];
      const double log_sig = std::log(sig);
      double sum_sp = 0.0;
      for (double l : s.log_x) sum_sp += softplus(b * (l - log_sig));
      return n * std::log(b / sig) + (b - 1.0) * (s.sum_log - n * log_sig) - 2.0 * sum_sp;
    }
    case ModelId::lomax: {
      const double a = t[0], sig = t[1];
      double sum_l1p = 0.0;
      for (double v : s.x) sum_l1p += std::log1p(v / sig);
      return n * std::log(a / sig) - (a + 1.0) * sum_l1p;
    }
  }
  return kNaN;
}

// Analytic score vector (d loglik / d theta).
Theta score(ModelId model, const Theta& t, const Sample& s) {
  const double n = s.n;
  switch (model) {
    case ModelId::exponential:
      return {-n / t[0] + s.sum_x / (t[0] * t[0]), 0.0};
    case ModelId::lognormal: {
      const double mu = t[0], sig = t[1];
      const double d = s.mean_log - mu;
      const double ss = s.centered_ss_log + n * d * d;
      return {n * d / (sig * sig), -n / sig + ss / (sig * sig * sig)};
    }
    case ModelId::gamma: {
      const double b = t[0], sig = t[1];
      return {-n * special::digamma(b) - n * std::log(sig) + s.sum_log,
              -n * b / sig + s.sum_x / (sig * sig)};
    }
    case ModelId::weibull: {
      const double a = t[0], sig = t[1];
      const double log_sig = std::log(sig);
      double sum_pow = 0.0, sum_pow_log = 0.0, sum_l = 0.0;
      for (double l : s.log_x) {
        const double lz = l - log_sig;
        const double p = std::exp(a * lz);
        sum_pow += p;
        sum_pow_log += p * lz;
        sum_l += lz;
      }
      return {n / a + sum_l - sum_pow_log, (-n * a + a * sum_pow) / sig};
    }
    case ModelId::fisk: {
      const double b = t[0], sig = t[1];
      const double log_sig = std::log(sig);
      double sum_l = 0.0, sum_ls = 0.0, sum_sg = 0.0;
      for (double l : s.log_x) {
        const double lz = l - log_sig;
        const double sg = sigmoid(b * lz);
        sum_l += lz;
        sum_ls += lz * sg;
        sum_sg += sg;
      }
      return {n / b + sum_l - 2.0 * sum_ls, (-n * b + 2.0 * b * sum_sg) / sig};
    }
    case ModelId::lomax: {
      const double a = t[0], sig = t[1];
      double sum_l1p = 0.0, sum_ratio = 0.0;
      for (double v : s.x) {
        sum_l1p += std::log1p(v / sig);
        sum_ratio += v / (sig + v);
      }
      return {n / a - sum_l1p, -n / sig + (a + 1.0) * sum_ratio / sig};
    }
  }
  return {kNaN, kNaN};
}

// Hessian of the log-likelihood by central differences of the analytic
// score with steps 1e-5 * (1 + |theta_i|), symmetrized.
std::array<Theta, 2> hessian(ModelId model, const Theta& t, const Sample& s) {
  const std::size_t k = parameter_count(model);
  std::array<Theta, 2> h{};
  for (std::size_t i = 0; i < k; ++i) {
    const double step = 1e-5 * (1.0 + std::fabs(t[i]));
    Theta up = t, down = t;
    up[i] += step;
    down[i] -= step;
    if (!feasible(model, down)) {
      // One-sided near the positivity boundary.
      const Theta g0 = score(model, t, s);
      const Theta g1 = score(model, up, s);
      for (std::size_t j = 0; j < k; ++j) h[j][i] = (g1[j] - g0[j]) / step;
      continue;
    }
    const Theta g1 = score(model, up, s);
    const Theta g0 = score(model, down, s);
    for (std::size_t j = 0; j < k; ++j) h[j][i] = (g1[j] - g0[j]) / (2.0 * step);
  }
  if (k == 2) {
    const double off = 0.5 * (h[0][1] + h[1][0]);
    h[0][1] = h[1][0] = off;
  }
  return h;
}

// Standard errors from the inverse of -H; NaN when -H is not positive definite.
std::vector<double> standard_errors(ModelId model, const Theta& t, const Sample& s) {
  const auto h = hessian(model, t, s);
  if (parameter_count(model) == 1) {
    const double info = -h[0][0];
    return {info > 0.0 ? std::sqrt(1.0 / info) : kNaN};
  }
  const double a = -h[0][0], b = -h[0][1], d = -h[1][1];
  const double det = a * d - b * b;
  if (!(a > 0.0 && d > 0.0 && det > 0.0)) return {kNaN, kNaN};
  return {std::sqrt(d / det), std::sqrt(a / det)};
}

Theta from_search(ModelId model, const std::vector<double>& u) {
  if (model == ModelId::exponential) return {std::exp(u[0]), 0.0};
  if (model == ModelId::lognormal) return {u[0], std::exp(u[1])};
  double first = u[0];
  if (model == ModelId::lomax) first = std::min(first, std::log(kLomaxShapeCap));
  return {std::exp(first), std::exp(u[1])};
}

std::vector<double> to_search(ModelId model, const Theta& t) {
  if (model == ModelId::exponential) return {std::log(t[0])};
  if (model == ModelId::lognormal) return {t[0], std::log(t[1])};
  return {std::log(t[0]), std::log(t[1])};
}

double sample_variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

double empirical_quantile(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Theta starting_values(ModelId model, const Sample& s) {
  const double mean = s.sum_x / s.n;
  const double var = sample_variance(s.x);
  switch (model) {
    case ModelId::exponential:
      return {empirical_quantile(s.x, 0.5) / std::log(2.0), 0.0};
    case ModelId::lognormal: {
      double spread = (empirical_quantile(s.log_x, 0.75) - empirical_quantile(s.log_x, 0.25)) / 1.349;
      if (!(spread > 0.0)) spread = std::sqrt(sample_variance(s.log_x));
      if (!(spread > 0.0)) spread = 1.0;
      return {empirical_quantile(s.log_x, 0.5), spread};
    }
    case ModelId::gamma:
      if (var > 0.0) return {mean * mean / var, var / mean};
      return {1.0, mean};
    case ModelId::weibull: {
      // Least squares of log(-log S(x_(i))) on log x_(i), S = 1 - i/(n+1).
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double surv = 1.0 - static_cast<double>(i + 1) / (s.n + 1.0);
        const double y = std::log(-std::log(surv));
        const double l = s.log_x[i];
        sx += l;
        sy += y;
        sxx += l * l;
        sxy += l * y;
      }
      const double denom = s.n * sxx - sx * sx;
      double alpha = denom > 0.0 ? (s.n * sxy - sx * sy) / denom : 1.0;
      if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0;
      const double intercept = (sy - alpha * sx) / s.n;
      double sigma = std::exp(-intercept / alpha);
      if (!(sigma > 0.0) || !std::isfinite(sigma)) sigma = mean;
      return {alpha, sigma};
    }
    case ModelId::fisk: {
      // log X is logistic with location log(sigma) and scale 1/beta.
      const double sd_log = std::sqrt(s.centered_ss_log / (s.n - 1.0));
      const double scale = sd_log * std::sqrt(3.0) / special::kPi;
      return {scale > 0.0 ? 1.0 / scale : 1.0, std::exp(s.mean_log)};
    }
    case ModelId::lomax: {
      const double r = var / (mean * mean);
      double alpha = r > 1.0 ? 2.0 * r / (r - 1.0) : 1.5;
      if (!std::isfinite(alpha)) alpha = 1.5;
      return {alpha, mean * (alpha - 1.0)};
    }
  }
  return {1.0, 1.0};
}

// Newton iterations on the score with step halving. Leaves `t` unchanged if
// no improving step exists.
void newton_polish(ModelId model, Theta& t, const Sample& s) {
  const std::size_t k = parameter_count(model);
  double current = loglik(model, t, s);
  for (int iter = 0; iter < 25; ++iter) {
    const Theta g = score(model, t, s);
    const auto h = hessian(model, t, s);
    Theta step{};
    if (k == 1) {
      if (!(h[0][0] < 0.0)) return;
      step[0] = -g[0] / h[0][0];
    } else {
      const double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
      if (!(h[0][0] < 0.0 && det > 0.0)) return;
      step[0] = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
      step[1] = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
    }
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      Theta trial = t;
      for (std::size_t i = 0; i < k; ++i) trial[i] += step[i];
      if (model == ModelId::lomax && trial[0] > kLomaxShapeCap) break;
      const double value = loglik(model, trial, s);
      if (feasible(model, trial) && value >= current - 1e-13 * std::fabs(current)) {
        t = trial;
        current = std::max(current, value);
        accepted = true;
        break;
      }
      for (double& v : step) v *= 0.5;
    }
    if (!accepted) return;
    double rel = 0.0;
    for (std::size_t i = 0; i < k; ++i) rel = std::max(rel, std::fabs(step[i]) / (1.0 + std::fabs(t[i])));
    if (rel < 1e-15) return;
  }
}

FitResult finish(ModelId model, const Theta& t, const Sample& s, bool converged, bool boundary,
                 int evaluations) {
  FitResult r;
  r.model = model;
  const std::size_t k = parameter_count(model);
  r.params = ParamVector::make(model, std::span<const double>(t.data(), k));
  r.loglik = loglik(model, t, s);
  r.n = s.x.size();
  const double kk = static_cast<double>(k);
  r.aic = -2.0 * r.loglik + 2.0 * kk;
  r.bic = -2.0 * r.loglik + kk * std::log(s.n);
  r.hqc = -2.0 * r.loglik + 2.0 * kk * std::log(std::log(s.n));
  r.se = boundary ? std::vector<double>(k, kNaN) : standard_errors(model, t, s);
  r.converged = converged;
  r.boundary = boundary;
  r.evaluations = evaluations;
  r.sample_id = sample_fingerprint(s.x);
  return r;
}

FitResult numeric_fit(ModelId model, const Sample& s) {
  auto objective = [&](const std::vector<double>& u) {
    const double ll = loglik(model, from_search(model, u), s);
    return std::isfinite(ll) ? -ll / s.n : kInf;
  };
  optimize::SimplexOptions options;
  auto result = optimize::nelder_mead(objective, to_search(model, starting_values(model, s)), options);
  int evaluations = result.evaluations;
  // Restart ladder: perturbed restarts from the best vertex.
  for (int attempt = 0; attempt < 3 && !result.converged; ++attempt) {
    options.initial_step = 0.1 / static_cast<double>(1 << attempt);
    result = optimize::nelder_mead(objective, result.point, options);
    evaluations += result.evaluations;
  }
  Theta t = from_search(model, result.point);
  const bool boundary =
      model == ModelId::lomax && result.point[0] >= std::log(kLomaxShapeCap) - 1e-9;
  if (!boundary && result.converged) newton_polish(model, t, s);
  return finish(model, t, s, result.converged, boundary, evaluations);
}

}  // namespace

double log_likelihood(const ParamVector& p, std::span<const double> data) {
  double sum = 0.0;
  for (double x : data) sum += log_pdf(p, x);
  return sum;
}

std::uint64_t sample_fingerprint(std::span<const double> data) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      hash ^= (v >> (8 * b)) & 0xFFu;
      hash *= 1099511628211ULL;
    }
  };
  mix(sorted.size());
  for (double v : sorted) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix(bits);
  }
  return hash;
}

FitResult fit_mle(ModelId model, std::span<const double> data, const FitOptions& options) {
  if (data.size() < 3) {
    throw InputError("fit_mle: need at least 3 observations, got " + std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(data[i] > 0.0) || !std::isfinite(data[i])) {
      throw InputError("fit_mle: datum " + std::to_string(i) + " is not strictly positive");
    }
  }
  const Sample s(data);
  if (!options.force_numeric) {
    if (model == ModelId::lognormal) {
      const double sigma = std::sqrt(s.centered_ss_log / s.n);
      if (!(sigma > 0.0)) throw InputError("fit_mle: LOG fit needs non-constant data");
      return finish(model, {s.mean_log, sigma}, s, true, false, 0);
    }
    if (model == ModelId::exponential) return finish(model, {s.sum_x / s.n, 0.0}, s, true, false, 0);
  }
  return numeric_fit(model, s);
}

std::vector<FitResult> fit_all(std::span<const double> data) {
  std::vector<FitResult> fits;
  fits.reserve(kAllModels.size());
  for (ModelId m : kAllModels) fits.push_back(fit_mle(m, data));
  return fits;
}

std::string_view support_group_name(SupportGroup group) {
  switch (group) {
    case SupportGroup::best_fit: return "best_fit";
    case SupportGroup::little_support: return "little_support";
    case SupportGroup::no_support: return "no_support";
  }
  return "?";
}

SupportGroup classify_delta(double delta) {
  if (delta <= 2.0) return SupportGroup::best_fit;
  if (delta <= 20.0) return SupportGroup::little_support;
  return SupportGroup::no_support;
}

const RankedModel& ModelRanking::find(ModelId model) const {
  for (const auto& m : models) {
    if (m.model == model) return m;
  }
  throw InputError("ranking has no entry for " + std::string(model_code(model)));
}

ModelRanking rank_models(std::span<const FitResult> fits) {
  if (fits.empty()) throw InputError("rank_models: no fits");
  for (const auto& f : fits) {
    if (f.sample_id != fits.front().sample_id || f.n != fits.front().n) {
      throw InputError("rank_models: fits come from different samples");
    }
  }
  auto argmin = [&](auto member) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < fits.size(); ++i) {
      if (fits[i].*member < fits[best].*member) best = i;
    }
    return best;
  };
  const std::size_t best = argmin(&FitResult::aic);
  ModelRanking ranking;
  ranking.best_aic = fits[best].model;
  ranking.best_bic = fits[argmin(&FitResult::bic)].model;
  ranking.best_hqc = fits[argmin(&FitResult::hqc)].model;
  for (const auto& f : fits) {
    RankedModel m;
    m.model = f.model;
    m.aic = f.aic;
    m.delta = f.aic - fits[best].aic;
    m.group = classify_delta(m.delta);
    m.converged = f.converged;
    m.boundary = f.boundary;
    ranking.models.push_back(m);
  }
  return ranking;
}

}  // namespace co2dist
