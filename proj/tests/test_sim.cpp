#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "estimator.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "specfun.hpp"

using logdet::Centering;
using logdet::CovSpec;
using logdet::Dims;
using logdet::Sampler;
using logdet::SimConfig;

namespace {

SimConfig base_config(long n, long p, long reps, std::uint64_t seed) {
  SimConfig c;
  c.dims = {n, p};
  c.reps = reps;
  c.seed = seed;
  return c;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& v) {
  double acc = 0.0;
  for (const double x : v) acc += x;
  const double mean = acc / static_cast<double>(v.size());
  double acc2 = 0.0;
  for (const double x : v) acc2 += (x - mean) * (x - mean);
  return {mean, acc2 / static_cast<double>(v.size())};
}

}  // namespace

TEST_CASE("one-sample KS statistic hand cases") {
  SUBCASE("single observation against the standard normal") {
    CHECK(logdet::ks_statistic({0.0}, logdet::std_normal_cdf) == doctest::Approx(0.5));
  }
  SUBCASE("two observations against the uniform CDF") {
    const auto uniform = [](double x) { return std::fmin(1.0, std::fmax(0.0, x)); };
    CHECK(logdet::ks_statistic({0.25, 0.75}, uniform) == doctest::Approx(0.25));
  }
  SUBCASE("matches the brute-force oracle on normal draws") {
    logdet::RngStream rng(606, 0);
    std::vector<double> draws(500);
    for (auto& d : draws) d = rng.normal();
    const double fast = logdet::ks_statistic(draws, logdet::std_normal_cdf);
    const double ref = oracle::ref_ks_statistic(draws, logdet::std_normal_cdf);
    CHECK(fast == doctest::Approx(ref).epsilon(1e-13));
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(logdet::ks_statistic({}, logdet::std_normal_cdf),
                    std::invalid_argument);
    CHECK_THROWS_AS(logdet::ks_statistic({1.0}, nullptr), std::invalid_argument);
  }
}

TEST_CASE("two-sample KS statistic") {
  SUBCASE("tied values step both empirical CDFs together") {
    CHECK(logdet::ks_two_sample({1.0, 1.0, 2.0}, {1.0, 2.0, 2.0}) ==
          doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("identical samples have zero distance") {
    CHECK(logdet::ks_two_sample({3.0, 1.0, 2.0}, {1.0, 2.0, 3.0}) == 0.0);
  }
  SUBCASE("disjoint supports have distance one") {
    CHECK(logdet::ks_two_sample({0.0, 1.0}, {5.0, 6.0}) == 1.0);
  }
  SUBCASE("symmetric in its arguments") {
    logdet::RngStream rng(17, 0);
    std::vector<double> a(101), b(257);
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal() + 0.3;
    CHECK(logdet::ks_two_sample(a, b) == logdet::ks_two_sample(b, a));
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(logdet::ks_two_sample({}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(logdet::ks_two_sample({1.0}, {}), std::invalid_argument);
  }
}

TEST_CASE("replicate draws are deterministic and schedule independent") {
  for (const Sampler sampler : {Sampler::bartlett, Sampler::full_matrix}) {
    SimConfig c = base_config(12, 4, 10, 2024);
    c.sampler = sampler;
    const auto all = logdet::draw_logdet_replicates(c);
    const auto again = logdet::draw_logdet_replicates(c);
    CHECK(all == again);  // bitwise

    c.reps = 5;
    const auto head = logdet::draw_logdet_replicates(c);
    for (std::size_t r = 0; r < 5; ++r) CHECK(head[r] == all[r]);

    c.seed = 2025;
    const auto other = logdet::draw_logdet_replicates(c);
    bool any_diff = false;
    for (std::size_t r = 0; r < 5; ++r) any_diff = any_diff || other[r] != all[r];
    CHECK(any_diff);
  }
}

TEST_CASE("full-matrix draws do not depend on the population covariance") {
  // The sampler subtracts log det Sigma, and the transformed data consume
  // normal draws in the same order, so the centered value is covariance-free
  // up to factorization round-off.
  SimConfig c = base_config(15, 6, 200, 99);
  c.sampler = Sampler::full_matrix;
  const auto reference = logdet::draw_logdet_replicates(c);
  for (const char* spec : {"diag:4", "ar:0.5", "random:3"}) {
    c.sigma_spec = CovSpec::parse(spec);
    const auto draws = logdet::draw_logdet_replicates(c);
    for (std::size_t r = 0; r < draws.size(); ++r) {
      CHECK_MESSAGE(draws[r] == doctest::Approx(reference[r]).epsilon(1e-8),
                    "spec = ", spec, ", replicate ", r);
    }
  }
}

TEST_CASE("the two samplers agree in distribution") {
  SimConfig a = base_config(40, 10, 3000, 31);
  a.sampler = Sampler::bartlett;
  SimConfig b = base_config(40, 10, 3000, 47);
  b.sampler = Sampler::full_matrix;
  const double d =
      logdet::ks_two_sample(logdet::draw_logdet_replicates(a),
                            logdet::draw_logdet_replicates(b));
  // 1% critical value for m = n = 3000.
  CHECK(d < 1.628 * std::sqrt(2.0 / 3000.0));
}

TEST_CASE("replicates have the exact mean and variance constants") {
  const Dims d{30, 5};
  SimConfig c = base_config(d.n, d.p, 4000, 11);
  const auto draws = logdet::draw_logdet_replicates(c);
  const auto m = moments(draws);
  const double mse = logdet::exact_mse(d);
  // E draw = tau exactly; Var draw = exact_mse exactly (the mean is tau).
  CHECK(std::fabs(m.mean - logdet::tau(d)) < 5.0 * std::sqrt(mse / 4000.0));
  CHECK(std::fabs(m.variance - mse) < 0.12 * mse);
}

TEST_CASE("normal-limit diagnostics under exact centering") {
  SimConfig c = base_config(200, 100, 3000, 7);
  const auto diag = logdet::run_clt_experiment(c);
  CHECK(diag.reps == 3000);
  CHECK(std::fabs(diag.mean) < 0.1);
  CHECK(diag.variance == doctest::Approx(1.0).epsilon(0.12));
  CHECK(std::fabs(diag.skewness) < 0.3);
  CHECK(diag.ks_stat < 0.05);
}

TEST_CASE("boundary centering uses the factorial centering and log scale") {
  const long n = 60;
  SimConfig c = base_config(n, n, 4000, 13);
  c.centering = Centering::boundary;
  const auto diag = logdet::run_clt_experiment(c);

  // Under the true finite-sample law the standardized draws have mean
  // (tau - centering)/scale and variance exact_mse/scale^2; the diagnostics
  // should land there within Monte Carlo error.
  const double scale = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  const double expected_mean =
      (logdet::tau({n, n}) - logdet::boundary_centering(n)) / scale;
  const double expected_var = logdet::exact_mse({n, n}) / (scale * scale);
  CHECK(diag.mean == doctest::Approx(expected_mean).epsilon(0.05));
  CHECK(diag.variance == doctest::Approx(expected_var).epsilon(0.15));

  SUBCASE("boundary centering demands a square regime") {
    SimConfig bad = base_config(10, 5, 10, 1);
    bad.centering = Centering::boundary;
    CHECK_THROWS_AS(logdet::run_clt_experiment(bad), std::invalid_argument);
  }
}

TEST_CASE("coverage experiment brackets the nominal level") {
  SimConfig c = base_config(50, 10, 4000, 19);
  c.level = 0.9;
  const auto rep = logdet::run_coverage_experiment(c);
  CHECK(rep.level == 0.9);
  CHECK(rep.reps == 4000);
  CHECK(rep.mc_stderr == doctest::Approx(std::sqrt(0.9 * 0.1 / 4000.0)).epsilon(1e-12));
  CHECK(std::fabs(rep.empirical_coverage - 0.9) < 5.0 * rep.mc_stderr);

  SimConfig tight = c;
  tight.level = 0.99;
  CHECK(logdet::run_coverage_experiment(tight).empirical_coverage >
        rep.empirical_coverage);
}

TEST_CASE("mse experiment reproduces the exact risk and reports the bounds") {
  SimConfig c = base_config(60, 20, 4000, 23);
  const auto rep = logdet::run_mse_experiment(c);
  CHECK(rep.reps == 4000);
  CHECK(rep.exact_mse == logdet::exact_mse({60, 20}));
  CHECK(rep.upper_bound == logdet::risk_upper_bound({60, 20}));
  CHECK(rep.lower_bound == logdet::info_lower_bound({60, 20}));
  CHECK(rep.empirical_mse == doctest::Approx(rep.exact_mse).epsilon(0.12));
  CHECK(rep.lower_bound <= rep.exact_mse);
  CHECK(rep.exact_mse <= rep.upper_bound);
}

TEST_CASE("configuration validation") {
  SimConfig c = base_config(10, 5, 0, 1);
  CHECK_THROWS_AS(logdet::draw_logdet_replicates(c), std::invalid_argument);
  c.reps = 10;
  c.level = 1.0;
  CHECK_THROWS_AS(logdet::draw_logdet_replicates(c), std::invalid_argument);
  c.level = 0.95;
  c.dims = {4, 9};
  CHECK_THROWS_AS(logdet::draw_logdet_replicates(c), std::invalid_argument);
}
