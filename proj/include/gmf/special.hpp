#pragma once

namespace gmf::special {

// Error function by rational Chebyshev approximation (Cody's scheme),
// relative accuracy ~1e-15. Kept internal so ball measures do not lean on
// host libm special functions.
double erf(double x);
double erfc(double x);

// log Gamma(twice_a / 2) for twice_a >= 1, exact half-integer recurrence.
double lgamma_half(int twice_a);

// Regularized lower incomplete gamma P(a, x); log_gamma_a = log Gamma(a).
double gamma_p(double a, double x, double log_gamma_a);

// Central chi-square CDF with dof degrees of freedom.
double chi2_cdf(int dof, double q);

// Noncentral chi-square CDF by the Poisson mixture over central CDFs,
// truncated when the remaining Poisson tail mass drops below 1e-14.
double noncentral_chi2_cdf(int dof, double noncentrality, double q);

}  // namespace gmf::special
