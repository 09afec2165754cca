#pragma once

namespace logdet {

// Scalar special functions used by the estimator constants. All gamma-family
// functions require a finite argument x > 0 and throw std::domain_error
// otherwise. Accuracy targets (verified in tests against independent
// oracles): log_gamma relative error <= 1e-13 for x >= 0.5, digamma and
// trigamma absolute error <= 1e-12, std_normal_cdf absolute error <= 1e-10,
// and |std_normal_cdf(std_normal_quantile(u)) - u| <= 1e-9.

// Natural log of the gamma function.
double log_gamma(double x);

// Digamma, psi(x) = d/dx log Gamma(x).
double digamma(double x);

// Trigamma, psi'(x).
double trigamma(double x);

// Standard normal distribution function Phi(z).
double std_normal_cdf(double z);

// Inverse of Phi on (0, 1).
double std_normal_quantile(double u);

}  // namespace logdet
