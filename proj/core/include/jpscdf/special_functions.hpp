#pragma once

namespace jps {

// Standard normal density, distribution function and quantile.
// normal_cdf is erfc-based (absolute error well below 1e-12);
// normal_quantile is Wichura's PPND16 rational approximation.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x),
// series/continued-fraction evaluation, absolute error <= 1e-12 for the
// parameter ranges used here (a in [0.5, 8], x >= 0).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b) by continued fraction.
double reg_beta(double a, double b, double x);

}  // namespace jps
