#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "accum.hpp"
#include "specfun.hpp"

namespace logdet {

namespace {

void validate_config(const SimConfig& c) {
  validate_dims(c.dims);
  if (c.reps < 1) {
    throw std::invalid_argument("sim: reps must be >= 1, got " + std::to_string(c.reps));
  }
  if (!(c.level > 0.0 && c.level < 1.0)) {
    throw std::invalid_argument("sim: level must lie in (0, 1), got " + std::to_string(c.level));
  }
  if (c.centering == Centering::boundary && c.dims.p != c.dims.n) {
    throw std::invalid_argument("sim: boundary centering requires p == n, got p=" +
                                std::to_string(c.dims.p) + ", n=" + std::to_string(c.dims.n));
  }
}

// Full-matrix sampler with the covariance factor hoisted out of the
// replicate loop.
class FullSampler {
 public:
  FullSampler(const CovSpec& spec, long p)
      : p_(static_cast<std::size_t>(p)), identity_(spec.kind == CovSpec::Kind::identity) {
    Matrix sigma = make_spd_from_spec(spec, p);
    chol_ = cholesky_factor(sigma);
    log_det_sigma_ = log_det_from_factor(chol_);
  }

  double draw(Dims dims, RngStream& stream) const {
    const std::size_t big_n = static_cast<std::size_t>(dims.n) + 1;
    Matrix x(big_n, p_);
    std::vector<double> g(p_);
    for (std::size_t i = 0; i < big_n; ++i) {
      for (double& gj : g) gj = stream.normal();
      double* row = x.row(i);
      if (identity_) {
        std::copy(g.begin(), g.end(), row);
      } else {
        // row = L g has covariance L L^T = Sigma while consuming exactly the
        // normal draws an identity run would consume.
        for (std::size_t r = 0; r < p_; ++r) {
          const double* lr = chol_.row(r);
          double acc = 0.0;
          for (std::size_t c = 0; c <= r; ++c) acc += lr[c] * g[c];
          row[r] = acc;
        }
      }
    }
    return cholesky_log_det(sample_covariance(x).sigma_hat) - log_det_sigma_;
  }

 private:
  std::size_t p_;
  bool identity_;
  Matrix chol_;
  double log_det_sigma_ = 0.0;
};

}  // namespace

double sample_bartlett_logdet(Dims dims, RngStream& stream) {
  validate_dims(dims);
  KahanSum acc;
  for (long k = 1; k <= dims.p; ++k) {
    acc.add(std::log(stream.chi_squared(static_cast<double>(dims.n - k + 1))));
  }
  return acc.value() -
         static_cast<double>(dims.p) * std::log(static_cast<double>(dims.n));
}

double sample_full_logdet(Dims dims, const CovSpec& sigma_spec, RngStream& stream) {
  validate_dims(dims);
  return FullSampler(sigma_spec, dims.p).draw(dims, stream);
}

std::vector<double> draw_logdet_replicates(const SimConfig& config) {
  validate_config(config);
  std::vector<double> draws(static_cast<std::size_t>(config.reps));
  if (config.sampler == Sampler::bartlett) {
    for (long r = 0; r < config.reps; ++r) {
      RngStream stream(config.seed, static_cast<std::uint64_t>(r));
      draws[static_cast<std::size_t>(r)] = sample_bartlett_logdet(config.dims, stream);
    }
  } else {
    const FullSampler sampler(config.sigma_spec, config.dims.p);
    for (long r = 0; r < config.reps; ++r) {
      RngStream stream(config.seed, static_cast<std::uint64_t>(r));
      draws[static_cast<std::size_t>(r)] = sampler.draw(config.dims, stream);
    }
  }
  return draws;
}

CltDiagnostics run_clt_experiment(const SimConfig& config) {
  std::vector<double> draws = draw_logdet_replicates(config);

  double center;
  double scale;
  if (config.centering == Centering::boundary) {
    center = boundary_centering(config.dims.n);
    scale = std::sqrt(2.0 * std::log(static_cast<double>(config.dims.n)));
  } else {
    center = tau(config.dims);
    scale = sigma(config.dims);
  }
  for (double& d : draws) d = (d - center) / scale;

  const double reps = static_cast<double>(draws.size());
  KahanSum m1;
  for (const double d : draws) m1.add(d);
  const double mean = m1.value() / reps;

  KahanSum m2;
  KahanSum m3;
  for (const double d : draws) {
    const double c = d - mean;
    m2.add(c * c);
    m3.add(c * c * c);
  }

  CltDiagnostics out;
  out.reps = config.reps;
  out.mean = mean;
  out.variance = m2.value() / reps;
  out.skewness =
      out.variance > 0.0 ? (m3.value() / reps) / std::pow(out.variance, 1.5) : 0.0;
  out.ks_stat = ks_statistic(std::move(draws), std_normal_cdf);
  return out;
}

CoverageReport run_coverage_experiment(const SimConfig& config) {
  std::vector<double> draws = draw_logdet_replicates(config);
  const double t = tau(config.dims);
  const double s = sigma(config.dims);
  const double z = std_normal_quantile(0.5 * (1.0 + config.level));

  // Each draw d is log det(Sigma_hat) - log det(Sigma), so the interval
  // (d - tau) +/- z sigma covers the truth exactly when |d - tau| <= z sigma.
  long covered = 0;
  for (const double d : draws) {
    if (std::abs(d - t) <= z * s) ++covered;
  }

  CoverageReport out;
  out.level = config.level;
  out.reps = config.reps;
  out.empirical_coverage = static_cast<double>(covered) / static_cast<double>(config.reps);
  out.mc_stderr = std::sqrt(config.level * (1.0 - config.level) /
                            static_cast<double>(config.reps));
  return out;
}

MseReport run_mse_experiment(const SimConfig& config) {
  std::vector<double> draws = draw_logdet_replicates(config);
  const double t = tau(config.dims);

  KahanSum acc;
  for (const double d : draws) {
    const double err = d - t;
    acc.add(err * err);
  }

  MseReport out;
  out.reps = config.reps;
  out.empirical_mse = acc.value() / static_cast<double>(config.reps);
  out.exact_mse = exact_mse(config.dims);
  out.upper_bound = risk_upper_bound(config.dims);
  out.lower_bound = info_lower_bound(config.dims);
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: need at least one sample");
  if (!cdf) throw std::invalid_argument("ks_statistic: cdf must be callable");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double below = static_cast<double>(i) / m;
    const double above = static_cast<double>(i + 1) / m;
    d = std::max(d, std::max(above - f, f - below));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: need at least one sample on each side");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;  // step past ties on both sides
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace logdet
