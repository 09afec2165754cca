#include "inference.hpp"

#include <cmath>
#include <stdexcept>

#include "accum.hpp"
#include "specfun.hpp"

namespace logdet {

namespace {

void validate_gaussian(const GaussianParams& g, const char* who) {
  if (g.mean.empty()) {
    throw std::invalid_argument(std::string(who) + ": mean must be non-empty");
  }
  if (g.covariance.rows() != g.covariance.cols() || g.covariance.rows() != g.mean.size()) {
    throw DimensionMismatchError(std::string(who) + ": mean has length " +
                                 std::to_string(g.mean.size()) + " but covariance is " +
                                 std::to_string(g.covariance.rows()) + " x " +
                                 std::to_string(g.covariance.cols()));
  }
}

void require_same_dim(std::size_t p1, std::size_t p2, const char* who) {
  if (p1 != p2) {
    throw DimensionMismatchError(std::string(who) + ": inputs have dimensions " +
                                 std::to_string(p1) + " and " + std::to_string(p2));
  }
}

// Sample covariance factored with the informative singularity message for
// the p > n regime.
struct FittedSample {
  std::vector<double> mean;
  Matrix chol;
  Dims dims;
};

FittedSample fit_sample(const Matrix& x, const char* who) {
  SampleCovariance sc = sample_covariance(x);
  if (sc.dims.p > sc.dims.n) {
    throw SingularMatrixError(std::string(who) + ": the sample covariance of " +
                              std::to_string(x.rows()) + " observations in dimension " +
                              std::to_string(sc.dims.p) +
                              " is singular; p <= n (observations - 1) is required");
  }
  FittedSample fit;
  fit.dims = sc.dims;
  fit.chol = cholesky_factor(sc.sigma_hat);
  fit.mean.assign(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* xi = x.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) fit.mean[j] += xi[j];
  }
  for (double& m : fit.mean) m /= static_cast<double>(x.rows());
  return fit;
}

}  // namespace

EntropyTestResult entropy_equality_test(const Matrix& x1, const Matrix& x2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("entropy_equality_test: alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
  require_same_dim(x1.cols(), x2.cols(), "entropy_equality_test");

  const double level = 1.0 - alpha;
  const EntropyEstimate h1 = estimate_entropy(x1, level);
  const EntropyEstimate h2 = estimate_entropy(x2, level);

  EntropyTestResult out;
  out.level = level;
  out.h1 = h1.h_hat;
  out.h2 = h2.h_hat;
  // Entropy is half the log determinant plus a constant, so each sample
  // contributes sigma^2/4 to the variance of the difference.
  out.se = 0.5 * std::hypot(h1.log_det.sigma, h2.log_det.sigma);
  out.z_stat = (out.h1 - out.h2) / out.se;
  out.p_value = 2.0 * (1.0 - std_normal_cdf(std::abs(out.z_stat)));
  out.reject = out.p_value < alpha;
  return out;
}

double kl_gaussian_exact(const GaussianParams& p1, const GaussianParams& p2) {
  validate_gaussian(p1, "kl_gaussian_exact");
  validate_gaussian(p2, "kl_gaussian_exact");
  require_same_dim(p1.mean.size(), p2.mean.size(), "kl_gaussian_exact");

  const std::size_t p = p1.mean.size();
  const Matrix l1 = cholesky_factor(p1.covariance);
  const Matrix l2 = cholesky_factor(p2.covariance);

  // trace(Sigma2^{-1} Sigma1) = ||L2^{-1} L1||_F^2, column by column.
  double trace = 0.0;
  std::vector<double> col(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < p; ++i) col[i] = i >= j ? l1(i, j) : 0.0;
    solve_lower_inplace(l2, col.data());
    for (const double v : col) trace += v * v;
  }

  std::vector<double> dmu(p);
  for (std::size_t i = 0; i < p; ++i) dmu[i] = p2.mean[i] - p1.mean[i];
  solve_lower_inplace(l2, dmu.data());
  double quad = 0.0;
  for (const double v : dmu) quad += v * v;

  // KL(P1 || P2) = 0.5 (tr(S2^{-1} S1) - p + quad + log det S2 - log det S1);
  // the log-ratio orientation is what makes the divergence nonnegative.
  const double log_ratio = log_det_from_factor(l2) - log_det_from_factor(l1);
  return 0.5 * (trace - static_cast<double>(p) + quad + log_ratio);
}

LogDetEstimate logdet_ratio_estimate(const Matrix& x1, const Matrix& x2, double level) {
  require_same_dim(x1.cols(), x2.cols(), "logdet_ratio_estimate");
  const LogDetEstimate e1 = estimate_log_det(x1, level);
  const LogDetEstimate e2 = estimate_log_det(x2, level);

  LogDetEstimate out;
  out.level = level;
  out.t_hat = e1.t_hat - e2.t_hat;
  out.tau = e1.tau - e2.tau;
  out.sigma = std::hypot(e1.sigma, e2.sigma);  // independent samples
  const double z = std_normal_quantile(0.5 * (1.0 + level));
  out.ci_lower = out.t_hat - z * out.sigma;
  out.ci_upper = out.t_hat + z * out.sigma;
  return out;
}

double qda_oracle_discriminant(const std::vector<double>& z, const GaussianParams& g1,
                               const GaussianParams& g2) {
  validate_gaussian(g1, "qda_oracle_discriminant");
  validate_gaussian(g2, "qda_oracle_discriminant");
  require_same_dim(g1.mean.size(), g2.mean.size(), "qda_oracle_discriminant");
  require_same_dim(z.size(), g1.mean.size(), "qda_oracle_discriminant");

  const std::size_t p = z.size();
  const Matrix l1 = cholesky_factor(g1.covariance);
  const Matrix l2 = cholesky_factor(g2.covariance);

  std::vector<double> d1(p);
  std::vector<double> d2(p);
  for (std::size_t i = 0; i < p; ++i) {
    d1[i] = z[i] - g1.mean[i];
    d2[i] = z[i] - g2.mean[i];
  }
  const double q1 = quadratic_form_inv(l1, d1.data());
  const double q2 = quadratic_form_inv(l2, d2.data());
  const double log_ratio = log_det_from_factor(l1) - log_det_from_factor(l2);
  return -q1 + q2 - log_ratio;
}

double qda_plugin_discriminant(const std::vector<double>& z, const Matrix& x1,
                               const Matrix& x2) {
  require_same_dim(x1.cols(), x2.cols(), "qda_plugin_discriminant");
  require_same_dim(z.size(), x1.cols(), "qda_plugin_discriminant");

  const FittedSample f1 = fit_sample(x1, "qda_plugin_discriminant");
  const FittedSample f2 = fit_sample(x2, "qda_plugin_discriminant");

  const std::size_t p = z.size();
  std::vector<double> d1(p);
  std::vector<double> d2(p);
  for (std::size_t i = 0; i < p; ++i) {
    d1[i] = z[i] - f1.mean[i];
    d2[i] = z[i] - f2.mean[i];
  }
  const double q1 = quadratic_form_inv(f1.chol, d1.data());
  const double q2 = quadratic_form_inv(f2.chol, d2.data());
  // The log-determinant difference is the bias-corrected estimate: each raw
  // log determinant gets its own tau correction.
  const double t1 = log_det_from_factor(f1.chol) - tau(f1.dims);
  const double t2 = log_det_from_factor(f2.chol) - tau(f2.dims);
  return -q1 + q2 - (t1 - t2);
}

}  // namespace logdet
