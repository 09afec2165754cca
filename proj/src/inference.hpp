#pragma once

#include <vector>

#include "estimator.hpp"
#include "matstat.hpp"

namespace logdet {

struct GaussianParams {
  std::vector<double> mean;
  Matrix covariance;  // p x p, symmetric positive definite
};

struct EntropyTestResult {
  double z_stat = 0.0;
  double p_value = 0.0;  // two-sided: 2 (1 - Phi(|z|))
  double h1 = 0.0;
  double h2 = 0.0;
  double se = 0.0;     // standard error of h1 - h2 under the CLT
  double level = 0.0;  // 1 - alpha
  bool reject = false;
};

// Two-sided z-test of equal differential entropy for two independent
// Gaussian samples sharing a dimension. Unpooled: each sample contributes
// its own CLT variance sigma^2_{n_i,p}/4. Rejects when p_value < alpha.
EntropyTestResult entropy_equality_test(const Matrix& x1, const Matrix& x2, double alpha);

// Exact Kullback-Leibler divergence KL(P1 || P2) between Gaussians, computed
// with triangular solves against the Cholesky factor of the second
// covariance; no matrix inverse is formed.
double kl_gaussian_exact(const GaussianParams& p1, const GaussianParams& p2);

// Bias-corrected estimate of log(det Sigma1 / det Sigma2) from two
// independent samples. In the returned struct, sigma carries the combined
// standard deviation sqrt(sigma_1^2 + sigma_2^2) and tau the net correction
// tau_1 - tau_2 that was applied.
LogDetEstimate logdet_ratio_estimate(const Matrix& x1, const Matrix& x2, double level);

// Quadratic discriminant score of a point z; positive favors population 1.
// The oracle form uses known parameters; the plugin form uses sample means,
// sample covariances, and the bias-corrected log-determinant difference.
double qda_oracle_discriminant(const std::vector<double>& z, const GaussianParams& g1,
                               const GaussianParams& g2);
double qda_plugin_discriminant(const std::vector<double>& z, const Matrix& x1,
                               const Matrix& x2);

}  // namespace logdet
