#include "rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace logdet {

namespace {

// SplitMix64: the recommended seed expander for xoshiro-family state.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  // Distinct (seed, stream) pairs start distinct SplitMix64 trajectories, so
  // per-replicate streams are statistically independent of one another.
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
  for (std::uint64_t& w : s_) w = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero state
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  for (;;) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;  // reject the single zero point so log(u) stays finite
  }
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double a = 2.0 * uniform() - 1.0;
    const double b = 2.0 * uniform() - 1.0;
    const double r2 = a * a + b * b;
    if (r2 >= 1.0 || r2 == 0.0) continue;
    const double scale = std::sqrt(-2.0 * std::log(r2) / r2);
    spare_ = b * scale;
    has_spare_ = true;
    return a * scale;
  }
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::domain_error("gamma: shape must be finite and > 0, got " + std::to_string(shape));
  }
  if (shape < 1.0) {
    // Boost the shape and scale back: X_a = X_{a+1} * U^{1/a}.
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }

  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;  // squeeze accept, no log needed
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::chi_squared(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) {
    throw std::domain_error("chi_squared: dof must be finite and > 0, got " + std::to_string(dof));
  }
  return 2.0 * gamma(0.5 * dof);
}

}  // namespace logdet
