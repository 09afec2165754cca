// C ABI over the core library: opaque handles, status codes, and a
// thread-local error string. No exception crosses this boundary.

#include "logdet.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "estimator.hpp"
#include "inference.hpp"
#include "matstat.hpp"
#include "sim.hpp"

struct logdet_dataset {
  logdet::Matrix x;  // N x p observations, row-major copy of the input
};

struct logdet_gaussian {
  logdet::GaussianParams params;
};

namespace {

thread_local std::string t_last_error;

logdet_status fail(logdet_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs the body and maps exceptions onto status codes. Order matters:
// DimensionMismatchError derives from std::invalid_argument.
template <typename Fn>
logdet_status guarded(Fn&& body) {
  try {
    body();
    t_last_error.clear();
    return LOGDET_OK;
  } catch (const logdet::SingularMatrixError& e) {
    return fail(LOGDET_ERR_SINGULAR, e.what());
  } catch (const logdet::DimensionMismatchError& e) {
    return fail(LOGDET_ERR_DIM_MISMATCH, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LOGDET_ERR_INTERNAL, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(LOGDET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(LOGDET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(LOGDET_ERR_INTERNAL, e.what());
  }
}

logdet_status require(bool ok, const char* message) {
  return ok ? LOGDET_OK : fail(LOGDET_ERR_INVALID_ARGUMENT, message);
}

logdet::Dims dataset_dims(const logdet_dataset* d) {
  return {static_cast<long>(d->x.rows()) - 1, static_cast<long>(d->x.cols())};
}

// Scalar functions of (n, p) share one shell.
template <typename Fn>
logdet_status scalar_np(int64_t n, int64_t p, double* out, Fn&& compute) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::Dims d{static_cast<long>(n), static_cast<long>(p)};
    logdet::validate_dims(d);
    *out = compute(d);
  });
}

logdet::CovSpec convert_cov_spec(const logdet_cov_spec& spec) {
  logdet::CovSpec out;
  switch (spec.kind) {
    case LOGDET_COV_IDENTITY:
      out.kind = logdet::CovSpec::Kind::identity;
      break;
    case LOGDET_COV_DIAG:
      if (!(spec.value > 0.0))
        throw std::invalid_argument("diagonal covariance value must be positive");
      out.kind = logdet::CovSpec::Kind::diag;
      out.value = spec.value;
      break;
    case LOGDET_COV_AR:
      if (!(std::fabs(spec.value) < 1.0))
        throw std::invalid_argument("AR coefficient must satisfy |value| < 1");
      out.kind = logdet::CovSpec::Kind::ar;
      out.value = spec.value;
      break;
    case LOGDET_COV_RANDOM:
      out.kind = logdet::CovSpec::Kind::random;
      out.seed = spec.seed;
      break;
    default:
      throw std::invalid_argument("unknown covariance kind");
  }
  return out;
}

logdet::SimConfig convert_sim_config(const logdet_sim_config& c) {
  logdet::SimConfig out;
  out.dims = {static_cast<long>(c.n), static_cast<long>(c.p)};
  out.reps = static_cast<long>(c.reps);
  out.seed = c.seed;
  switch (c.sampler) {
    case LOGDET_SAMPLER_FULL:
      out.sampler = logdet::Sampler::full_matrix;
      break;
    case LOGDET_SAMPLER_BARTLETT:
      out.sampler = logdet::Sampler::bartlett;
      break;
    default:
      throw std::invalid_argument("unknown sampler");
  }
  out.sigma_spec = convert_cov_spec(c.sigma);
  out.level = c.level;
  switch (c.centering) {
    case LOGDET_CENTERING_EXACT:
      out.centering = logdet::Centering::exact;
      break;
    case LOGDET_CENTERING_BOUNDARY:
      out.centering = logdet::Centering::boundary;
      break;
    default:
      throw std::invalid_argument("unknown centering");
  }
  return out;
}

logdet::GaussianParams to_params(const logdet_gaussian* g) { return g->params; }

}  // namespace

extern "C" {

const char* logdet_version(void) { return LOGDET_VERSION; }

const char* logdet_last_error(void) { return t_last_error.c_str(); }

/* ---- data handles ----------------------------------------------------- */

logdet_status logdet_dataset_create(const double* data, int64_t n_rows, int64_t n_cols,
                                    logdet_dataset** out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  if (require(data != nullptr, "data pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (n_rows < 2) throw std::invalid_argument("dataset needs at least 2 rows");
    if (n_cols < 1) throw std::invalid_argument("dataset needs at least 1 column");
    auto rows = static_cast<std::size_t>(n_rows);
    auto cols = static_cast<std::size_t>(n_cols);
    logdet::Matrix x(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
      if (!std::isfinite(data[i])) throw std::invalid_argument("dataset entries must be finite");
      x.data()[i] = data[i];
    }
    *out = new logdet_dataset{std::move(x)};
  });
}

void logdet_dataset_destroy(logdet_dataset* dataset) { delete dataset; }

int64_t logdet_dataset_rows(const logdet_dataset* dataset) {
  return dataset ? static_cast<int64_t>(dataset->x.rows()) : 0;
}

int64_t logdet_dataset_cols(const logdet_dataset* dataset) {
  return dataset ? static_cast<int64_t>(dataset->x.cols()) : 0;
}

logdet_status logdet_gaussian_create(const double* mean, const double* covariance,
                                     int64_t dim, logdet_gaussian** out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  if (require(mean != nullptr, "mean pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(covariance != nullptr, "covariance pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    auto p = static_cast<std::size_t>(dim);
    logdet::GaussianParams params;
    params.mean.assign(mean, mean + p);
    for (double v : params.mean) {
      if (!std::isfinite(v)) throw std::invalid_argument("mean entries must be finite");
    }
    params.covariance = logdet::Matrix(p, p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        double v = covariance[i * p + j];
        if (!std::isfinite(v))
          throw std::invalid_argument("covariance entries must be finite");
        params.covariance(i, j) = v;
      }
    }
    // Accept tiny asymmetry from round-tripped arithmetic, then symmetrize so
    // downstream factorizations see an exactly symmetric matrix.
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        double a = params.covariance(i, j);
        double b = params.covariance(j, i);
        double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
        if (std::fabs(a - b) > 1e-12 * scale)
          throw std::invalid_argument("covariance must be symmetric");
        double s = 0.5 * (a + b);
        params.covariance(i, j) = s;
        params.covariance(j, i) = s;
      }
    }
    *out = new logdet_gaussian{std::move(params)};
  });
}

void logdet_gaussian_destroy(logdet_gaussian* gaussian) { delete gaussian; }

/* ---- exact constants and risk bounds ---------------------------------- */

logdet_status logdet_tau(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::tau(d); });
}

logdet_status logdet_sigma(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::sigma(d); });
}

logdet_status logdet_exact_mse(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::exact_mse(d); });
}

logdet_status logdet_risk_upper_bound(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::risk_upper_bound(d); });
}

logdet_status logdet_info_lower_bound(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::info_lower_bound(d); });
}

logdet_status logdet_diag_lower_bound(int64_t n, int64_t p, double* out) {
  // No p <= n restriction here, so bypass the scalar_np validation.
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = logdet::diag_lower_bound({static_cast<long>(n), static_cast<long>(p)});
  });
}

logdet_status logdet_rnp_ratio(int64_t n, int64_t p, double* out) {
  return scalar_np(n, p, out, [](logdet::Dims d) { return logdet::rnp_ratio(d); });
}

logdet_status logdet_rnp_bound(int64_t n, double* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = logdet::rnp_bound(static_cast<long>(n)); });
}

logdet_status logdet_boundary_centering(int64_t n, double* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = logdet::boundary_centering(static_cast<long>(n)); });
}

logdet_status logdet_clt_standardize(double t_hat, double true_log_det, int64_t n, int64_t p,
                                     double* out) {
  return scalar_np(n, p, out, [&](logdet::Dims d) {
    return logdet::clt_standardize(t_hat, true_log_det, d);
  });
}

/* ---- estimation -------------------------------------------------------- */

logdet_status logdet_estimate_log_det(const logdet_dataset* dataset, double level,
                                      logdet_estimate* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(dataset != nullptr, "dataset pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::EntropyEstimate e = logdet::estimate_entropy(dataset->x, level);
    logdet::Dims d = dataset_dims(dataset);
    out->n = d.n;
    out->p = d.p;
    out->tau = e.log_det.tau;
    out->sigma = e.log_det.sigma;
    out->t_hat = e.log_det.t_hat;
    out->ci_lower = e.log_det.ci_lower;
    out->ci_upper = e.log_det.ci_upper;
    out->h_hat = e.h_hat;
    out->h_ci_lower = e.ci_lower;
    out->h_ci_upper = e.ci_upper;
    out->level = e.log_det.level;
  });
}

logdet_status logdet_log_det_ratio(const logdet_dataset* x1, const logdet_dataset* x2,
                                   double level, logdet_ratio_estimate* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(x1 != nullptr && x2 != nullptr, "dataset pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::LogDetEstimate r = logdet::logdet_ratio_estimate(x1->x, x2->x, level);
    out->n1 = dataset_dims(x1).n;
    out->n2 = dataset_dims(x2).n;
    out->p = dataset_dims(x1).p;
    out->estimate = r.t_hat;
    out->sigma = r.sigma;
    out->ci_lower = r.ci_lower;
    out->ci_upper = r.ci_upper;
    out->level = r.level;
  });
}

logdet_status logdet_entropy_equality_test(const logdet_dataset* x1, const logdet_dataset* x2,
                                           double alpha, logdet_entropy_test* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(x1 != nullptr && x2 != nullptr, "dataset pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::EntropyTestResult r = logdet::entropy_equality_test(x1->x, x2->x, alpha);
    out->n1 = dataset_dims(x1).n;
    out->n2 = dataset_dims(x2).n;
    out->p = dataset_dims(x1).p;
    out->h1 = r.h1;
    out->h2 = r.h2;
    out->se = r.se;
    out->z_stat = r.z_stat;
    out->p_value = r.p_value;
    out->alpha = alpha;
    out->reject = r.reject ? 1 : 0;
  });
}

/* ---- divergence and classification ------------------------------------- */

logdet_status logdet_kl_divergence(const logdet_gaussian* p1, const logdet_gaussian* p2,
                                   double* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(p1 != nullptr && p2 != nullptr, "gaussian pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = logdet::kl_gaussian_exact(to_params(p1), to_params(p2)); });
}

logdet_status logdet_qda_oracle(const double* z, int64_t dim, const logdet_gaussian* g1,
                                const logdet_gaussian* g2, double* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(z != nullptr, "point pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(g1 != nullptr && g2 != nullptr, "gaussian pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<double> point(z, z + static_cast<std::size_t>(dim));
    *out = logdet::qda_oracle_discriminant(point, to_params(g1), to_params(g2));
  });
}

logdet_status logdet_qda_plugin(const double* z, int64_t dim, const logdet_dataset* x1,
                                const logdet_dataset* x2, double* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(z != nullptr, "point pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(x1 != nullptr && x2 != nullptr, "dataset pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<double> point(z, z + static_cast<std::size_t>(dim));
    *out = logdet::qda_plugin_discriminant(point, x1->x, x2->x);
  });
}

/* ---- seeded Monte Carlo experiments ------------------------------------ */

logdet_status logdet_run_clt(const logdet_sim_config* config, logdet_clt_report* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(config != nullptr, "config pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::CltDiagnostics r = logdet::run_clt_experiment(convert_sim_config(*config));
    out->mean = r.mean;
    out->variance = r.variance;
    out->skewness = r.skewness;
    out->ks_stat = r.ks_stat;
    out->reps = r.reps;
  });
}

logdet_status logdet_run_coverage(const logdet_sim_config* config,
                                  logdet_coverage_report* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(config != nullptr, "config pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::CoverageReport r = logdet::run_coverage_experiment(convert_sim_config(*config));
    out->level = r.level;
    out->empirical_coverage = r.empirical_coverage;
    out->mc_stderr = r.mc_stderr;
    out->reps = r.reps;
  });
}

logdet_status logdet_run_mse(const logdet_sim_config* config, logdet_mse_report* out) {
  if (require(out != nullptr, "output pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  if (require(config != nullptr, "config pointer is null") != LOGDET_OK)
    return LOGDET_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    logdet::MseReport r = logdet::run_mse_experiment(convert_sim_config(*config));
    out->empirical_mse = r.empirical_mse;
    out->exact_mse = r.exact_mse;
    out->upper_bound = r.upper_bound;
    out->lower_bound = r.lower_bound;
    out->reps = r.reps;
  });
}

}  // extern "C"
