#ifndef LOGDET_H
#define LOGDET_H

/*
 * C API for log-determinant and Gaussian differential-entropy estimation.
 *
 * The estimators operate on an N x p sample of i.i.d. Gaussian observations.
 * Throughout, n denotes the effective sample size N - 1 (the degrees of
 * freedom of the centered sample covariance) and p the dimension; the exact
 * constants require 1 <= p <= n unless stated otherwise.
 *
 * Every fallible call returns a logdet_status; outputs are written through
 * pointers only on LOGDET_OK. On failure, logdet_last_error() returns a
 * human-readable detail string for the current thread.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The CLI reuses the numeric values as process exit codes. */
typedef enum logdet_status {
  LOGDET_OK = 0,
  LOGDET_ERR_INVALID_ARGUMENT = 2, /* bad dimensions, domains, or config */
  LOGDET_ERR_SINGULAR = 3,         /* covariance singular or not positive definite */
  LOGDET_ERR_DIM_MISMATCH = 4,     /* inputs disagree on a shared dimension */
  LOGDET_ERR_INTERNAL = 5
} logdet_status;

/* Library version, "major.minor.patch". */
const char* logdet_version(void);

/* Detail message for the most recent failure on the calling thread. */
const char* logdet_last_error(void);

/* ---- data handles ----------------------------------------------------- */

/* Immutable N x p sample matrix; rows are observations. */
typedef struct logdet_dataset logdet_dataset;

/* Copies row-major data. Requires n_rows >= 2, n_cols >= 1, finite entries. */
logdet_status logdet_dataset_create(const double* data, int64_t n_rows, int64_t n_cols,
                                    logdet_dataset** out);
void logdet_dataset_destroy(logdet_dataset* dataset);
int64_t logdet_dataset_rows(const logdet_dataset* dataset);
int64_t logdet_dataset_cols(const logdet_dataset* dataset);

/* Gaussian parameters: mean (length dim) plus row-major dim x dim covariance.
 * The covariance must be symmetric (verified to a small relative tolerance,
 * then stored exactly symmetrized). */
typedef struct logdet_gaussian logdet_gaussian;

logdet_status logdet_gaussian_create(const double* mean, const double* covariance,
                                     int64_t dim, logdet_gaussian** out);
void logdet_gaussian_destroy(logdet_gaussian* gaussian);

/* ---- exact constants and risk bounds ---------------------------------- */

/* Exact bias of the raw log determinant (always negative). */
logdet_status logdet_tau(int64_t n, int64_t p, double* out);

/* Exact CLT standard deviation sqrt(sum_k 2/(n-k+1)). */
logdet_status logdet_sigma(int64_t n, int64_t p, double* out);

/* Exact mean squared error of the bias-corrected estimator. */
logdet_status logdet_exact_mse(int64_t n, int64_t p, double* out);

/* Closed-form upper bound on the MSE; +infinity at p == n. */
logdet_status logdet_risk_upper_bound(int64_t n, int64_t p, double* out);

/* Benchmark lower bound 2p/n. */
logdet_status logdet_info_lower_bound(int64_t n, int64_t p, double* out);

/* Lower bound c * p/n, c ~= 0.0022844; valid for any n, p >= 1 (no p <= n
 * restriction). */
logdet_status logdet_diag_lower_bound(int64_t n, int64_t p, double* out);

/* r_{n,p} = [sum 1/(n-k+1)^2] / [sum 1/(n-k+1)] and its dimension-free bound
 * (bound requires n >= 2). */
logdet_status logdet_rnp_ratio(int64_t n, int64_t p, double* out);
logdet_status logdet_rnp_bound(int64_t n, double* out);

/* Boundary centering log (n-1)! - n log n (n >= 2). */
logdet_status logdet_boundary_centering(int64_t n, double* out);

/* (t_hat - true_log_det) / sigma(n, p). */
logdet_status logdet_clt_standardize(double t_hat, double true_log_det, int64_t n, int64_t p,
                                     double* out);

/* ---- estimation -------------------------------------------------------- */

typedef struct logdet_estimate {
  int64_t n, p;
  double tau, sigma;
  double t_hat, ci_lower, ci_upper;     /* log-determinant scale */
  double h_hat, h_ci_lower, h_ci_upper; /* entropy scale */
  double level;
} logdet_estimate;

/* Bias-corrected log det Sigma and differential entropy with two-sided CLT
 * intervals at the given confidence level in (0, 1). */
logdet_status logdet_estimate_log_det(const logdet_dataset* dataset, double level,
                                      logdet_estimate* out);

typedef struct logdet_ratio_estimate {
  int64_t n1, n2, p;
  double estimate; /* bias-corrected log(det Sigma1 / det Sigma2) */
  double sigma;    /* combined standard deviation of the difference */
  double ci_lower, ci_upper;
  double level;
} logdet_ratio_estimate;

logdet_status logdet_log_det_ratio(const logdet_dataset* x1, const logdet_dataset* x2,
                                   double level, logdet_ratio_estimate* out);

typedef struct logdet_entropy_test {
  int64_t n1, n2, p;
  double h1, h2, se, z_stat, p_value;
  double alpha;
  int reject; /* 1 when p_value < alpha */
} logdet_entropy_test;

/* Two-sided test of equal differential entropy for two independent samples
 * sharing a dimension; unpooled variance. */
logdet_status logdet_entropy_equality_test(const logdet_dataset* x1, const logdet_dataset* x2,
                                           double alpha, logdet_entropy_test* out);

/* ---- divergence and classification ------------------------------------- */

/* Exact KL(P1 || P2) between Gaussians. */
logdet_status logdet_kl_divergence(const logdet_gaussian* p1, const logdet_gaussian* p2,
                                   double* out);

/* Quadratic discriminant score of point z (length dim); positive favors
 * population 1. Oracle: known parameters. Plugin: sample estimates with the
 * bias-corrected log-determinant difference. */
logdet_status logdet_qda_oracle(const double* z, int64_t dim, const logdet_gaussian* g1,
                                const logdet_gaussian* g2, double* out);
logdet_status logdet_qda_plugin(const double* z, int64_t dim, const logdet_dataset* x1,
                                const logdet_dataset* x2, double* out);

/* ---- seeded Monte Carlo experiments ------------------------------------ */

typedef enum logdet_sampler {
  LOGDET_SAMPLER_FULL = 0,    /* Gaussian observations + sample covariance */
  LOGDET_SAMPLER_BARTLETT = 1 /* O(p) log-chi-square representation */
} logdet_sampler;

typedef enum logdet_cov_kind {
  LOGDET_COV_IDENTITY = 0,
  LOGDET_COV_DIAG = 1,  /* value * I */
  LOGDET_COV_AR = 2,    /* value^|i-j| */
  LOGDET_COV_RANDOM = 3 /* seeded random SPD */
} logdet_cov_kind;

typedef struct logdet_cov_spec {
  logdet_cov_kind kind;
  double value; /* diag value or AR coefficient */
  uint64_t seed; /* random kind only */
} logdet_cov_spec;

typedef enum logdet_centering {
  LOGDET_CENTERING_EXACT = 0,   /* (tau, sigma) */
  LOGDET_CENTERING_BOUNDARY = 1 /* (log (n-1)! - n log n, sqrt(2 log n)); p == n only */
} logdet_centering;

typedef struct logdet_sim_config {
  int64_t n, p, reps;
  uint64_t seed; /* replicate r draws from the stream (seed, r) */
  logdet_sampler sampler;
  logdet_cov_spec sigma;      /* full sampler only */
  double level;               /* coverage experiment only */
  logdet_centering centering; /* CLT experiment only */
} logdet_sim_config;

typedef struct logdet_clt_report {
  double mean, variance, skewness, ks_stat;
  int64_t reps;
} logdet_clt_report;

typedef struct logdet_coverage_report {
  double level, empirical_coverage, mc_stderr;
  int64_t reps;
} logdet_coverage_report;

typedef struct logdet_mse_report {
  double empirical_mse, exact_mse, upper_bound, lower_bound;
  int64_t reps;
} logdet_mse_report;

logdet_status logdet_run_clt(const logdet_sim_config* config, logdet_clt_report* out);
logdet_status logdet_run_coverage(const logdet_sim_config* config,
                                  logdet_coverage_report* out);
logdet_status logdet_run_mse(const logdet_sim_config* config, logdet_mse_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LOGDET_H */
