#pragma once

#include "matstat.hpp"

namespace logdet {

// Throws std::invalid_argument unless 1 <= p <= n.
void validate_dims(Dims d);

// Exact mean of log det(Sigma_hat) - log det(Sigma) under Gaussian sampling:
// tau = sum_{k=1}^{p} [psi((n-k+1)/2) - log(n/2)]. Always negative; this is
// the additive bias removed from the raw log determinant.
double tau(Dims d);

// Exact CLT standard deviation: sigma = sqrt(sum_{k=1}^{p} 2/(n-k+1)).
double sigma(Dims d);

// Exact mean squared error of the bias-corrected estimator:
// sum_{k=1}^{p} psi'((n-k+1)/2).
double exact_mse(Dims d);

// Closed-form bound exact_mse <= -2 log(1 - p/n) + (10 p)/(3 n (n - p));
// +infinity on the p = n boundary.
double risk_upper_bound(Dims d);

// Benchmark lower bound 2p/n for estimation over bounded-spectrum models.
double info_lower_bound(Dims d);

// Lower bound c * p/n with c = (1 - sqrt((e-1)/2))/32 ~= 0.0022844, valid
// with no p <= n restriction (diagonal sub-family argument).
double diag_lower_bound(Dims d);

// r_{n,p} = [sum 1/(n-k+1)^2] / [sum 1/(n-k+1)], and its dimension-free
// bound max{ 1/(log n + 1), (pi^2/6) / (log(n+1) - log(log n + 1)) } (n >= 2).
double rnp_ratio(Dims d);
double rnp_bound(long n);

// Centering used on the p = n boundary: log (n-1)! - n log n (n >= 2).
double boundary_centering(long n);

struct LogDetEstimate {
  double t_hat = 0.0;  // bias-corrected estimate of log det Sigma
  double tau = 0.0;    // correction subtracted from the raw log determinant
  double sigma = 0.0;  // CLT standard deviation
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double level = 0.0;  // two-sided confidence level of [ci_lower, ci_upper]
};

struct EntropyEstimate {
  double h_hat = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  LogDetEstimate log_det;  // the underlying log-determinant estimate
};

// Bias-corrected log-determinant estimate with a two-sided CLT interval.
// level must lie in (0, 1). Throws SingularMatrixError when the sample
// covariance cannot be factored, including the p > n case.
LogDetEstimate estimate_log_det(const Matrix& x, double level);

// Differential entropy of a Gaussian via the affine map
// H = p/2 + (p/2) log(2 pi) + (log det Sigma)/2 applied to the estimate and
// both interval endpoints.
EntropyEstimate estimate_entropy(const Matrix& x, double level);

double entropy_from_log_det(double log_det, long p);

// (t_hat - true_log_det) / sigma(d): standard normal in the CLT limit.
double clt_standardize(double t_hat, double true_log_det, Dims d);

}  // namespace logdet
