#pragma once

namespace logdet {

// Kahan compensated accumulator. The estimator constants are sums of up to
// ~10^6 terms of mixed magnitude; compensation keeps them accurate to ~1 ulp
// independent of length and of summation order regressions.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace logdet
