#include "estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "accum.hpp"
#include "specfun.hpp"

namespace logdet {

namespace {

void require_level(double level, const char* who) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": level must lie in (0, 1), got " +
                                std::to_string(level));
  }
}

}  // namespace

void validate_dims(Dims d) {
  if (d.p < 1) {
    throw std::invalid_argument("dims: p must be >= 1, got " + std::to_string(d.p));
  }
  if (d.n < d.p) {
    throw std::invalid_argument("dims: p <= n required, got p=" + std::to_string(d.p) +
                                ", n=" + std::to_string(d.n));
  }
}

// The constants below sum k = 1..p with the k = 1 term smallest in magnitude,
// so the natural order is ascending-magnitude accumulation; compensation
// covers the very long sums (p can reach 10^6).

double tau(Dims d) {
  validate_dims(d);
  const double log_half_n = std::log(0.5 * static_cast<double>(d.n));
  KahanSum acc;
  for (long k = 1; k <= d.p; ++k) {
    acc.add(digamma(0.5 * static_cast<double>(d.n - k + 1)) - log_half_n);
  }
  return acc.value();
}

double sigma(Dims d) {
  validate_dims(d);
  KahanSum acc;
  for (long k = 1; k <= d.p; ++k) acc.add(2.0 / static_cast<double>(d.n - k + 1));
  return std::sqrt(acc.value());
}

double exact_mse(Dims d) {
  validate_dims(d);
  KahanSum acc;
  for (long k = 1; k <= d.p; ++k) acc.add(trigamma(0.5 * static_cast<double>(d.n - k + 1)));
  return acc.value();
}

double risk_upper_bound(Dims d) {
  validate_dims(d);
  if (d.p == d.n) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(d.n);
  const double p = static_cast<double>(d.p);
  return -2.0 * std::log1p(-p / n) + (10.0 * p) / (3.0 * n) / (n - p);
}

double info_lower_bound(Dims d) {
  validate_dims(d);
  return 2.0 * static_cast<double>(d.p) / static_cast<double>(d.n);
}

double diag_lower_bound(Dims d) {
  if (d.n < 1 || d.p < 1) {
    throw std::invalid_argument("diag_lower_bound: n and p must be >= 1");
  }
  static const double kC = (1.0 - std::sqrt((std::numbers::e - 1.0) / 2.0)) / 32.0;
  return kC * static_cast<double>(d.p) / static_cast<double>(d.n);
}

double rnp_ratio(Dims d) {
  validate_dims(d);
  KahanSum num;
  KahanSum den;
  for (long k = 1; k <= d.p; ++k) {
    const double m = static_cast<double>(d.n - k + 1);
    num.add(1.0 / (m * m));
    den.add(1.0 / m);
  }
  return num.value() / den.value();
}

double rnp_bound(long n) {
  if (n < 2) throw std::invalid_argument("rnp_bound: n must be >= 2, got " + std::to_string(n));
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  const double a = 1.0 / (log_n + 1.0);
  const double b =
      (std::numbers::pi * std::numbers::pi / 6.0) / (std::log(nd + 1.0) - std::log(log_n + 1.0));
  return std::max(a, b);
}

double boundary_centering(long n) {
  if (n < 2) {
    throw std::invalid_argument("boundary_centering: n must be >= 2, got " + std::to_string(n));
  }
  const double nd = static_cast<double>(n);
  return log_gamma(nd) - nd * std::log(nd);  // log (n-1)! - n log n
}

double entropy_from_log_det(double log_det, long p) {
  if (p < 1) throw std::invalid_argument("entropy_from_log_det: p must be >= 1");
  const double pd = static_cast<double>(p);
  return 0.5 * pd * (1.0 + std::log(2.0 * std::numbers::pi)) + 0.5 * log_det;
}

LogDetEstimate estimate_log_det(const Matrix& x, double level) {
  require_level(level, "estimate_log_det");
  SampleCovariance sc = sample_covariance(x);
  if (sc.dims.p > sc.dims.n) {
    throw SingularMatrixError(
        "estimate_log_det: the sample covariance of " + std::to_string(x.rows()) +
        " observations in dimension " + std::to_string(sc.dims.p) +
        " is singular; consistent estimation requires p <= n (n = observations - 1 = " +
        std::to_string(sc.dims.n) + ")");
  }
  const double raw_log_det = cholesky_log_det(sc.sigma_hat);

  LogDetEstimate est;
  est.level = level;
  est.tau = tau(sc.dims);
  est.sigma = sigma(sc.dims);
  est.t_hat = raw_log_det - est.tau;
  const double z = std_normal_quantile(0.5 * (1.0 + level));
  est.ci_lower = est.t_hat - z * est.sigma;
  est.ci_upper = est.t_hat + z * est.sigma;
  return est;
}

EntropyEstimate estimate_entropy(const Matrix& x, double level) {
  EntropyEstimate h;
  h.log_det = estimate_log_det(x, level);
  const long p = static_cast<long>(x.cols());
  // The map is affine with positive slope, so the interval endpoints map
  // directly and keep their order and coverage.
  h.h_hat = entropy_from_log_det(h.log_det.t_hat, p);
  h.ci_lower = entropy_from_log_det(h.log_det.ci_lower, p);
  h.ci_upper = entropy_from_log_det(h.log_det.ci_upper, p);
  return h;
}

double clt_standardize(double t_hat, double true_log_det, Dims d) {
  return (t_hat - true_log_det) / sigma(d);
}

}  // namespace logdet
