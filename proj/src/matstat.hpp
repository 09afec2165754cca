#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logdet {

// Dense row-major matrix. Deliberately minimal: contiguous storage plus the
// few accessors the estimators need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t p) {
    Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Effective sample size n (observations minus one, the degrees of freedom of
// the centered covariance) and dimension p. Single source of truth for the
// n-vs-N convention.
struct Dims {
  long n = 0;
  long p = 0;
};

// A covariance factorization hit a non-positive or non-finite pivot: the
// matrix is singular or not positive definite.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Two inputs that must share a dimension do not.
class DimensionMismatchError : public std::invalid_argument {
 public:
  explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct SampleCovariance {
  Matrix sigma_hat;  // p x p, exactly symmetric
  Dims dims;         // n = rows - 1, p = cols
};

// Centered sample covariance with divisor n = N - 1. Requires N >= 2 and
// finite entries. The output is exactly symmetric.
SampleCovariance sample_covariance(const Matrix& x);

// Second-moment matrix about a known zero mean, divisor N. Kept for
// simulation shortcuts; the estimation paths always center.
Matrix covariance_known_mean(const Matrix& x);

// Lower-triangular Cholesky factor L with L L^T = a. Requires a square,
// exactly symmetric, finite input; throws SingularMatrixError when a pivot
// is <= 0 or non-finite.
Matrix cholesky_factor(const Matrix& a);

// log det(A) = 2 * sum_i log L_ii from a previously computed factor.
double log_det_from_factor(const Matrix& chol_lower);

// Factor-then-log-det in one call.
double cholesky_log_det(const Matrix& a);

// Solve L y = b in place for lower-triangular L.
void solve_lower_inplace(const Matrix& chol_lower, double* b);

// v^T A^{-1} v given the Cholesky factor of A: one forward solve, no inverse.
double quadratic_form_inv(const Matrix& chol_lower, const double* v);

// Covariance models used by the simulators and the CLI --sigma flag.
struct CovSpec {
  enum class Kind { identity, diag, ar, random };

  Kind kind = Kind::identity;
  double value = 1.0;      // diagonal value, or the AR coefficient
  std::uint64_t seed = 0;  // random kind only

  // Accepts "identity", "diag:<a>" with a > 0, "ar:<rho>" with |rho| < 1,
  // or "random:<seed>". Throws std::invalid_argument naming the bad field.
  static CovSpec parse(const std::string& text);
};

// Builds the p x p covariance described by the spec. Deterministic for the
// random kind: the same seed always yields the same matrix.
Matrix make_spd_from_spec(const CovSpec& spec, long p);

}  // namespace logdet
