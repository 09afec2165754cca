#pragma once

#include <cstdint>

namespace logdet {

// Deterministic xoshiro256++ stream with SplitMix64 seeding. Replicate r of a
// seeded experiment draws from RngStream(seed, r), so results are bitwise
// reproducible regardless of how replicates are scheduled. The samplers are
// implemented here rather than with <random> distributions because the
// standard specifies engines but not distribution algorithms, and seeded
// reports must be byte-stable across toolchains.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();

  // Uniform on (0, 1); never returns an endpoint.
  double uniform();

  // Standard normal via the Marsaglia polar method (second value cached).
  double normal();

  // Gamma(shape, scale 1) via Marsaglia-Tsang squeeze rejection; shape > 0.
  double gamma(double shape);

  // chi^2 with dof degrees of freedom (dof > 0, not necessarily integral).
  double chi_squared(double dof);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace logdet
