#include "matstat.hpp"

#include <cmath>
#include <cstdlib>

#include "accum.hpp"
#include "rng.hpp"

namespace logdet {

namespace {

void require_finite(const Matrix& x, const char* who) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!std::isfinite(x(i, j))) {
        throw std::invalid_argument(std::string(who) + ": non-finite entry at row " +
                                    std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
}

void require_square_symmetric(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  }
  require_finite(a, who);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (a(i, j) != a(j, i)) {
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

double parse_number(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument(std::string("sigma spec: ") + what + " '" + text +
                                "' is not a number");
  }
  return v;
}

}  // namespace

SampleCovariance sample_covariance(const Matrix& x) {
  if (x.rows() < 2) {
    throw std::invalid_argument("sample_covariance: need at least two observations, got " +
                                std::to_string(x.rows()));
  }
  if (x.cols() < 1) {
    throw std::invalid_argument("sample_covariance: need at least one variable");
  }
  require_finite(x, "sample_covariance");

  const std::size_t big_n = x.rows();
  const std::size_t p = x.cols();

  std::vector<double> mean(p, 0.0);
  for (std::size_t i = 0; i < big_n; ++i) {
    const double* xi = x.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += xi[j];
  }
  for (double& m : mean) m /= static_cast<double>(big_n);

  Matrix centered(big_n, p);
  for (std::size_t i = 0; i < big_n; ++i) {
    const double* xi = x.row(i);
    double* ci = centered.row(i);
    for (std::size_t j = 0; j < p; ++j) ci[j] = xi[j] - mean[j];
  }

  // Accumulate the upper triangle of C^T C one observation at a time (cache
  // friendly), then mirror; the result is exactly symmetric by construction,
  // which is the same matrix that averaging with the transpose would give.
  Matrix s(p, p);
  for (std::size_t k = 0; k < big_n; ++k) {
    const double* ck = centered.row(k);
    for (std::size_t i = 0; i < p; ++i) {
      const double ci = ck[i];
      double* si = s.row(i);
      for (std::size_t j = i; j < p; ++j) si[j] += ci * ck[j];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(big_n - 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      s(i, j) *= inv_n;
      s(j, i) = s(i, j);
    }
  }

  return {std::move(s), Dims{static_cast<long>(big_n) - 1, static_cast<long>(p)}};
}

Matrix covariance_known_mean(const Matrix& x) {
  if (x.rows() < 1 || x.cols() < 1) {
    throw std::invalid_argument("covariance_known_mean: matrix must be non-empty");
  }
  require_finite(x, "covariance_known_mean");

  const std::size_t big_n = x.rows();
  const std::size_t p = x.cols();
  Matrix s(p, p);
  for (std::size_t k = 0; k < big_n; ++k) {
    const double* xk = x.row(k);
    for (std::size_t i = 0; i < p; ++i) {
      const double xi = xk[i];
      double* si = s.row(i);
      for (std::size_t j = i; j < p; ++j) si[j] += xi * xk[j];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(big_n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      s(i, j) *= inv_n;
      s(j, i) = s(i, j);
    }
  }
  return s;
}

Matrix cholesky_factor(const Matrix& a) {
  require_square_symmetric(a, "cholesky_factor");
  const std::size_t p = a.rows();
  Matrix l(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    // A vanishing or negative pivot is the meaningful statistical signal
    // here (singular / not positive definite), not a numerics bug.
    if (!std::isfinite(diag) || diag <= 0.0) {
      throw SingularMatrixError(
          "cholesky_factor: matrix is singular or not positive definite (pivot " +
          std::to_string(diag) + " at index " + std::to_string(j) + ")");
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return l;
}

double log_det_from_factor(const Matrix& chol_lower) {
  KahanSum acc;
  for (std::size_t i = 0; i < chol_lower.rows(); ++i) acc.add(std::log(chol_lower(i, i)));
  return 2.0 * acc.value();
}

double cholesky_log_det(const Matrix& a) { return log_det_from_factor(cholesky_factor(a)); }

void solve_lower_inplace(const Matrix& chol_lower, double* b) {
  const std::size_t p = chol_lower.rows();
  for (std::size_t i = 0; i < p; ++i) {
    double v = b[i];
    const double* li = chol_lower.row(i);
    for (std::size_t k = 0; k < i; ++k) v -= li[k] * b[k];
    b[i] = v / li[i];
  }
}

double quadratic_form_inv(const Matrix& chol_lower, const double* v) {
  std::vector<double> y(v, v + chol_lower.rows());
  solve_lower_inplace(chol_lower, y.data());
  double q = 0.0;
  for (const double yi : y) q += yi * yi;
  return q;
}

CovSpec CovSpec::parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);

  CovSpec spec;
  if (kind == "identity") {
    if (!arg.empty()) throw std::invalid_argument("sigma spec: 'identity' takes no argument");
    spec.kind = Kind::identity;
  } else if (kind == "diag") {
    spec.kind = Kind::diag;
    spec.value = parse_number(arg, "diagonal value");
    if (!std::isfinite(spec.value) || spec.value <= 0.0) {
      throw std::invalid_argument("sigma spec: diagonal value must be finite and > 0");
    }
  } else if (kind == "ar") {
    spec.kind = Kind::ar;
    spec.value = parse_number(arg, "AR coefficient");
    if (!(std::abs(spec.value) < 1.0)) {
      throw std::invalid_argument("sigma spec: AR coefficient must lie in (-1, 1)");
    }
  } else if (kind == "random") {
    spec.kind = Kind::random;
    if (arg.empty()) throw std::invalid_argument("sigma spec: 'random' requires a seed");
    for (const char c : arg) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("sigma spec: random seed '" + arg +
                                    "' is not a non-negative integer");
      }
    }
    spec.seed = std::strtoull(arg.c_str(), nullptr, 10);
  } else {
    throw std::invalid_argument("sigma spec: unknown kind '" + kind +
                                "' (expected identity, diag:<a>, ar:<rho>, random:<seed>)");
  }
  return spec;
}

Matrix make_spd_from_spec(const CovSpec& spec, long p) {
  if (p < 1) {
    throw std::invalid_argument("make_spd_from_spec: dimension must be >= 1, got " +
                                std::to_string(p));
  }
  const std::size_t up = static_cast<std::size_t>(p);

  switch (spec.kind) {
    case CovSpec::Kind::identity:
      return Matrix::identity(up);

    case CovSpec::Kind::diag: {
      if (!std::isfinite(spec.value) || spec.value <= 0.0) {
        throw std::invalid_argument("make_spd_from_spec: diagonal value must be > 0");
      }
      Matrix m(up, up);
      for (std::size_t i = 0; i < up; ++i) m(i, i) = spec.value;
      return m;
    }

    case CovSpec::Kind::ar: {
      if (!(std::abs(spec.value) < 1.0)) {
        throw std::invalid_argument("make_spd_from_spec: AR coefficient must lie in (-1, 1)");
      }
      // Toeplitz rho^|i-j|: positive definite for |rho| < 1.
      Matrix m(up, up);
      for (std::size_t i = 0; i < up; ++i) {
        for (std::size_t j = 0; j < up; ++j) {
          m(i, j) = std::pow(spec.value, std::abs(static_cast<double>(i) -
                                                  static_cast<double>(j)));
        }
      }
      return m;
    }

    case CovSpec::Kind::random: {
      // G G^T / p is SPD almost surely; the ridge keeps the smallest
      // eigenvalue away from zero deterministically.
      RngStream stream(spec.seed, /*stream_id=*/0);
      Matrix g(up, up);
      for (std::size_t i = 0; i < up; ++i) {
        for (std::size_t j = 0; j < up; ++j) g(i, j) = stream.normal();
      }
      Matrix s(up, up);
      for (std::size_t i = 0; i < up; ++i) {
        for (std::size_t j = i; j < up; ++j) {
          double v = 0.0;
          for (std::size_t k = 0; k < up; ++k) v += g(i, k) * g(j, k);
          v /= static_cast<double>(p);
          if (i == j) v += 0.25;
          s(i, j) = v;
          s(j, i) = v;
        }
      }
      return s;
    }
  }
  throw std::invalid_argument("make_spd_from_spec: unknown covariance kind");
}

}  // namespace logdet
