#pragma once

// Special functions used by the distribution, test and regression code.

namespace co2dist::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double normal_pdf(double z);
double normal_cdf(double z);
// Upper tail 1 - Phi(z) without cancellation.
double normal_sf(double z);
// log Phi(z), finite far into the lower tail.
double normal_log_cdf(double z);

// Inverse standard normal CDF (Wichura's AS 241, PPND16). Defined on (0, 1);
// throws InputError outside.
double normal_quantile(double p);

double log_gamma(double x);
double digamma(double x);

// Regularized incomplete gamma P(a, x) = gamma(a, x) / Gamma(a) and its
// complement Q(a, x). Series for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-sided p-value P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);
// Upper tail of F(d1, d2).
double f_sf(double f, double d1, double d2);
// Upper tail of chi-square with `df` degrees of freedom.
double chi_square_sf(double x, double df);

}  // namespace co2dist::special
