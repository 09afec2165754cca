#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "estimator.hpp"
#include "matstat.hpp"
#include "rng.hpp"

namespace logdet {

enum class Sampler {
  full_matrix,  // Gaussian observations -> sample covariance -> log det
  bartlett      // O(p) log-chi-square representation of the same law
};

// Standardization used by the CLT experiment: the exact (tau, sigma)
// constants, or the boundary pair (log (n-1)! - n log n, sqrt(2 log n))
// which is only meaningful for p = n.
enum class Centering { exact, boundary };

struct SimConfig {
  Dims dims;
  long reps = 1;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::bartlett;
  CovSpec sigma_spec;                      // full_matrix sampler only
  double level = 0.95;                     // coverage experiment only
  Centering centering = Centering::exact;  // CLT experiment only
};

struct CltDiagnostics {
  double mean = 0.0;
  double variance = 0.0;  // population convention; 0 when reps == 1
  double skewness = 0.0;  // 0 when the variance is 0
  double ks_stat = 0.0;   // two-sided distance to the standard normal CDF
  long reps = 0;
};

struct CoverageReport {
  double level = 0.0;
  double empirical_coverage = 0.0;
  double mc_stderr = 0.0;  // sqrt(level (1 - level) / reps)
  long reps = 0;
};

struct MseReport {
  double empirical_mse = 0.0;
  double exact_mse = 0.0;
  double upper_bound = 0.0;  // +inf at p == n
  double lower_bound = 0.0;  // 2 p / n
  long reps = 0;
};

// One draw of log det(Sigma_hat) - log det(Sigma) via
// sum_{k=1}^{p} log chi^2_{n-k+1} - p log n. The law does not depend on
// Sigma, so no covariance is needed.
double sample_bartlett_logdet(Dims dims, RngStream& stream);

// The same draw the long way: n + 1 observations from N(0, Sigma) with Sigma
// built from the spec, then the Cholesky log determinant of their sample
// covariance, minus log det Sigma. The per-observation normal draws are
// consumed in the same order for every spec, so runs at equal seeds differ
// only by the covariance transformation.
double sample_full_logdet(Dims dims, const CovSpec& sigma_spec, RngStream& stream);

// Replicate r of a run uses RngStream(config.seed, r): draws are a pure
// function of (seed, r) and identical under any scheduling of replicates.
std::vector<double> draw_logdet_replicates(const SimConfig& config);

// Standardizes the replicate draws and summarizes how close they are to a
// standard normal. Moment aggregation is compensated and in fixed replicate
// order.
CltDiagnostics run_clt_experiment(const SimConfig& config);

// Fraction of replicates whose two-sided CLT interval covers the truth.
CoverageReport run_coverage_experiment(const SimConfig& config);

// Empirical mean squared error of the bias-corrected estimate next to its
// exact value and the closed-form bounds.
MseReport run_mse_experiment(const SimConfig& config);

// Two-sided Kolmogorov-Smirnov statistics.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace logdet
