#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "matstat.hpp"
#include "oracles.hpp"

using logdet::CovSpec;
using logdet::Matrix;

TEST_CASE("sample_covariance hand cases") {
  SUBCASE("two observations in one dimension, divisor n = 1") {
    Matrix x(2, 1);
    x(0, 0) = 0.0;
    x(1, 0) = 2.0;
    const auto sc = logdet::sample_covariance(x);
    CHECK(sc.sigma_hat(0, 0) == 2.0);
    CHECK(sc.dims.n == 1);
    CHECK(sc.dims.p == 1);
  }
  SUBCASE("identical rows centre to the zero matrix") {
    Matrix x(5, 3);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 3; ++j) x(i, j) = 7.5 - static_cast<double>(j);
    const auto sc = logdet::sample_covariance(x);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) CHECK(sc.sigma_hat(a, b) == 0.0);
  }
}

TEST_CASE("sample_covariance matches the naive oracle and is exactly symmetric") {
  Matrix x(6, 3);
  oracle::fill_lcg(x, 99001);
  const auto sc = logdet::sample_covariance(x);
  const Matrix ref = oracle::ref_sample_covariance(x);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      CHECK(sc.sigma_hat(a, b) == doctest::Approx(ref(a, b)).epsilon(1e-12));
      CHECK(sc.sigma_hat(a, b) == sc.sigma_hat(b, a));  // bit-for-bit
    }
  }
  CHECK(sc.dims.n == 5);
  CHECK(sc.dims.p == 3);
}

TEST_CASE("sample_covariance validates its input") {
  Matrix one_row(1, 2);
  CHECK_THROWS_AS(logdet::sample_covariance(one_row), std::invalid_argument);
  Matrix bad(3, 2);
  bad(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(logdet::sample_covariance(bad), std::invalid_argument);
  bad(2, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(logdet::sample_covariance(bad), std::invalid_argument);
}

TEST_CASE("sample_covariance output is positive semidefinite") {
  // Includes a p > rows-1 shape, where the covariance is rank deficient.
  const std::size_t shapes[][2] = {{4, 2}, {10, 6}, {3, 5}, {7, 7}};
  std::uint64_t seed = 11;
  for (const auto& s : shapes) {
    Matrix x(s[0], s[1]);
    oracle::fill_lcg(x, seed++);
    const auto sc = logdet::sample_covariance(x);
    const double lo = oracle::ref_min_eigenvalue(sc.sigma_hat);
    const double hi = oracle::ref_max_eigenvalue(sc.sigma_hat);
    CHECK(lo >= -1e-10 * std::fmax(1.0, hi));
  }
}

TEST_CASE("sample_covariance scale equivariance") {
  Matrix x(8, 4);
  oracle::fill_lcg(x, 5150);
  const double c = 3.25;
  Matrix cx = x;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 4; ++j) cx(i, j) *= c;
  const auto base = logdet::sample_covariance(x);
  const auto scaled = logdet::sample_covariance(cx);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(scaled.sigma_hat(a, b) ==
            doctest::Approx(c * c * base.sigma_hat(a, b)).epsilon(1e-12));
}

TEST_CASE("cholesky_log_det identities") {
  CHECK(logdet::cholesky_log_det(Matrix::identity(7)) == 0.0);

  Matrix diag(5, 5);
  for (std::size_t i = 0; i < 5; ++i) diag(i, i) = 2.0;
  CHECK(logdet::cholesky_log_det(diag) == doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("cholesky_log_det agrees with the eigenvalue oracle") {
  const Matrix a = oracle::random_spd(8, 777);
  const double got = logdet::cholesky_log_det(a);
  const double ref = oracle::ref_log_det(a);
  CHECK(got == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("cholesky_log_det scaling identity") {
  const Matrix a = oracle::random_spd(6, 4242);
  const double base = logdet::cholesky_log_det(a);
  const double c = 0.37;
  Matrix ca = a;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) ca(i, j) *= c;
  CHECK(logdet::cholesky_log_det(ca) ==
        doctest::Approx(6.0 * std::log(c) + base).epsilon(1e-9));
}

TEST_CASE("cholesky failure modes") {
  SUBCASE("zero matrix is singular") {
    Matrix zero(3, 3);
    CHECK_THROWS_AS(logdet::cholesky_factor(zero), logdet::SingularMatrixError);
  }
  SUBCASE("rank-deficient matrix is singular and the message names the pivot") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 1.0;  // rank one
    try {
      logdet::cholesky_factor(a);
      FAIL("expected SingularMatrixError");
    } catch (const logdet::SingularMatrixError& e) {
      CHECK(std::string(e.what()).find("pivot") != std::string::npos);
    }
  }
  SUBCASE("negative-definite matrix is rejected") {
    Matrix a(2, 2);
    a(0, 0) = -4.0;
    a(1, 1) = -1.0;
    CHECK_THROWS_AS(logdet::cholesky_factor(a), logdet::SingularMatrixError);
  }
  SUBCASE("asymmetric input is an argument error, not a singularity") {
    Matrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 0.5;
    a(1, 0) = 0.25;
    a(1, 1) = 2.0;
    CHECK_THROWS_AS(logdet::cholesky_factor(a), std::invalid_argument);
  }
  SUBCASE("non-square input is rejected") {
    Matrix a(2, 3);
    CHECK_THROWS_AS(logdet::cholesky_factor(a), std::invalid_argument);
  }
}

TEST_CASE("triangular solves and quadratic forms") {
  // A = [[4, 2], [2, 3]]: A^{-1} = (1/8) [[3, -2], [-2, 4]], v = (1, 1):
  // v' A^{-1} v = 3/8.
  Matrix a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 3.0;
  const Matrix l = logdet::cholesky_factor(a);
  const double v[2] = {1.0, 1.0};
  CHECK(logdet::quadratic_form_inv(l, v) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));

  // L y = b by hand: L = [[2, 0], [1, sqrt(2)]], b = (2, 1) -> y = (1, 0).
  double b[2] = {2.0, 1.0};
  logdet::solve_lower_inplace(l, b);
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("whitening identity: transforming rows adds the factor's log det") {
  Matrix y(8, 4);
  oracle::fill_lcg(y, 31337);
  const double base = logdet::cholesky_log_det(logdet::sample_covariance(y).sigma_hat);

  for (const char* spec_text : {"diag:4", "ar:0.5", "random:99"}) {
    const CovSpec spec = CovSpec::parse(spec_text);
    const Matrix sigma = logdet::make_spd_from_spec(spec, 4);
    const Matrix s = logdet::cholesky_factor(sigma);
    // rows of y mapped by x_i = S y_i (S lower triangular square root)
    Matrix x(8, 4);
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t a = 0; a < 4; ++a) {
        double acc = 0.0;
        for (std::size_t b = 0; b <= a; ++b) acc += s(a, b) * y(i, b);
        x(i, a) = acc;
      }
    }
    const double transformed =
        logdet::cholesky_log_det(logdet::sample_covariance(x).sigma_hat);
    const double sigma_log_det = logdet::cholesky_log_det(sigma);
    CHECK_MESSAGE(transformed == doctest::Approx(sigma_log_det + base).epsilon(1e-8),
                  "spec = ", spec_text);
  }
}

TEST_CASE("make_spd_from_spec shapes and values") {
  SUBCASE("identity") {
    const Matrix m = logdet::make_spd_from_spec(CovSpec::parse("identity"), 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == (i == j ? 1.0 : 0.0));
  }
  SUBCASE("diagonal") {
    const Matrix m = logdet::make_spd_from_spec(CovSpec::parse("diag:2"), 4);
    CHECK(logdet::cholesky_log_det(m) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("AR structure") {
    const Matrix m = logdet::make_spd_from_spec(CovSpec::parse("ar:0.5"), 2);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 0.5);
    CHECK(m(1, 0) == 0.5);
    CHECK(m(1, 1) == 1.0);
    CHECK(logdet::cholesky_log_det(m) == doctest::Approx(std::log(0.75)).epsilon(1e-14));
  }
  SUBCASE("random spec is deterministic in its seed") {
    const Matrix a = logdet::make_spd_from_spec(CovSpec::parse("random:7"), 5);
    const Matrix b = logdet::make_spd_from_spec(CovSpec::parse("random:7"), 5);
    const Matrix c = logdet::make_spd_from_spec(CovSpec::parse("random:8"), 5);
    bool all_equal = true, any_diff = false;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        all_equal = all_equal && a(i, j) == b(i, j);
        any_diff = any_diff || a(i, j) != c(i, j);
      }
    }
    CHECK(all_equal);
    CHECK(any_diff);
    CHECK_NOTHROW(logdet::cholesky_factor(a));  // positive definite
  }
}

TEST_CASE("covariance spec parsing errors name the offending field") {
  CHECK_THROWS_AS(CovSpec::parse("diag:0"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("diag:-1"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("diag:abc"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("ar:1"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("ar:-1.5"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("random:12x"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse("random:"), std::invalid_argument);
  CHECK_THROWS_AS(CovSpec::parse(""), std::invalid_argument);
  try {
    CovSpec::parse("bogus:1");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }

  const CovSpec d = CovSpec::parse("diag:2.5");
  CHECK(d.kind == CovSpec::Kind::diag);
  CHECK(d.value == 2.5);
  const CovSpec r = CovSpec::parse("random:31");
  CHECK(r.kind == CovSpec::Kind::random);
  CHECK(r.seed == 31);
}

TEST_CASE("known-mean covariance uses divisor N and no centering") {
  Matrix x(2, 1);
  x(0, 0) = 1.0;
  x(1, 0) = -1.0;
  const Matrix m = logdet::covariance_known_mean(x);
  CHECK(m(0, 0) == 1.0);  // (1 + 1) / 2 about zero
}
