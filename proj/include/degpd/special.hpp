#pragma once

namespace degpd {

// Special-function kernel behind the carrier families. All functions are pure
// and thread-safe; domain violations throw std::domain_error.

// Standard normal CDF, absolute error below 1e-12 for finite x.
double std_normal_cdf(double x);

// Standard normal density.
double std_normal_pdf(double x);

// Inverse of std_normal_cdf on (0,1); round trips within 1e-10.
// Rational approximation refined by one Halley step.
double std_normal_quantile(double p);

double log_gamma(double x);
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), a,b > 0, x in [0,1].
// Continued fraction with the symmetry switch; relative error <= 1e-10.
double reg_inc_beta(double x, double a, double b);

// Inverse in x of reg_inc_beta: returns x with I_x(a,b) = p within 1e-9.
// Safeguarded Newton with bisection fallback.
double reg_inc_beta_inverse(double p, double a, double b);

}  // namespace degpd
