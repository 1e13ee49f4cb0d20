#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace co2dist {

enum class NormalityTest {
  shapiro_wilk,
  shapiro_francia,
  lilliefors,
  cramer_von_mises,
  anderson_darling,
  dagostino_pearson,
  jarque_bera,
};

inline constexpr std::array<NormalityTest, 7> kAllNormalityTests = {
    NormalityTest::shapiro_wilk,     NormalityTest::shapiro_francia,
    NormalityTest::lilliefors,       NormalityTest::cramer_von_mises,
    NormalityTest::anderson_darling, NormalityTest::dagostino_pearson,
    NormalityTest::jarque_bera};

// SW, SF, LL, CVM, AD, DP, JB.
std::string_view test_code(NormalityTest test);
std::optional<NormalityTest> parse_test_code(std::string_view code);

// Inclusive sample-size range in which a test is defined.
struct SizeRange {
  std::size_t min = 0;
  std::size_t max = 0;
};
SizeRange valid_size_range(NormalityTest test);

struct TestReport {
  NormalityTest test = NormalityTest::shapiro_wilk;
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject_05 = false;
  bool reject_01 = false;
};

// Normality test on `values` as given (no transform).
//   SW   Royston's AS R94 W and p-value.
//   SF   squared correlation with Blom scores, Royston's log(1 - W') normal
//        approximation.
//   LL   Kolmogorov-Smirnov distance with estimated mean/sd; Dallal-Wilkinson
//        p-value, Stephens' modified-statistic polynomials above p = 0.1.
//   CVM  Stephens' modified W^2 (1 + 0.5/n) and case-3 p-value curves.
//   AD   Stephens' modified A^2 (1 + 0.75/n + 2.25/n^2) and case-3 curves.
//   DP   D'Agostino skewness and Anscombe-Glynn kurtosis z-scores, K^2 ~ chi2(2).
//   JB   n (S^2/6 + (K - 3)^2/24) ~ chi2(2).
// Throws InputError when n is outside valid_size_range or the data are constant.
TestReport normality_test(NormalityTest test, std::span<const double> values);

// The same test applied to log(data); the lognormality battery. Data must be > 0.
TestReport test_lognormality(NormalityTest test, std::span<const double> data);

// Shapiro-Wilk coefficients a_1..a_{n/2} for the upper half of the
// ordered sample (exposed for tests).
std::vector<double> shapiro_wilk_coefficients(std::size_t n);

}  // namespace co2dist
