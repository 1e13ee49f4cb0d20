#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "co2dist/distributions.hpp"

namespace co2dist {

struct FitOptions {
  // Use the simplex optimizer even where a closed form exists (LOG, EXP).
  bool force_numeric = false;
};

struct FitResult {
  ModelId model = ModelId::lognormal;
  ParamVector params = ParamVector::lognormal(0.0, 1.0);
  // Asymptotic standard errors from the inverse observed information; NaN
  // when the information matrix is not positive definite.
  std::vector<double> se;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
  std::size_t n = 0;
  bool converged = false;
  // The optimizer stopped at the search cap (Lomax shape drifting to infinity).
  bool boundary = false;
  int evaluations = 0;
  // Permutation-invariant identity of the fitted sample.
  std::uint64_t sample_id = 0;
};

// Upper limit on the Lomax shape during the search.
inline constexpr double kLomaxShapeCap = 1e6;

// Log-likelihood sum(log f(x_i; theta)).
double log_likelihood(const ParamVector& p, std::span<const double> data);

// Permutation-invariant fingerprint of a sample (hash of the sorted values).
std::uint64_t sample_fingerprint(std::span<const double> data);

// Maximum-likelihood fit. LOG and EXP use closed forms unless forced numeric;
// the others run a Nelder-Mead search on log-parameters from moment-based
// starting values, polished by Newton steps on the analytic score. Requires
// n >= 3 and strictly positive data (InputError otherwise). A search that
// fails to converge after the restart ladder is reported via `converged`.
FitResult fit_mle(ModelId model, std::span<const double> data, const FitOptions& options = {});

std::vector<FitResult> fit_all(std::span<const double> data);

enum class SupportGroup { best_fit, little_support, no_support };

std::string_view support_group_name(SupportGroup group);
// Delta <= 2, 2 < Delta <= 20, Delta > 20.
SupportGroup classify_delta(double delta);

struct RankedModel {
  ModelId model = ModelId::lognormal;
  double aic = 0.0;
  double delta = 0.0;
  SupportGroup group = SupportGroup::best_fit;
  bool converged = false;
  bool boundary = false;
};

struct ModelRanking {
  // Same order as the input fits.
  std::vector<RankedModel> models;
  ModelId best_aic = ModelId::lognormal;
  ModelId best_bic = ModelId::lognormal;
  ModelId best_hqc = ModelId::lognormal;

  const RankedModel& find(ModelId model) const;
};

// Delta = AIC - min AIC and the support group of each fit. All fits must come
// from the same sample (InputError otherwise).
ModelRanking rank_models(std::span<const FitResult> fits);

}  // namespace co2dist
