#pragma once

#include "toricq/lattice.hpp"

#include <cstdint>
#include <random>

namespace toricq {

/// Seeded generator with a platform-independent bounded draw (the standard
/// distributions are implementation-defined, which would break byte-identical
/// reports across toolchains).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }
  /// Uniform in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  /// Nonzero rational p/q with 1 <= |p| <= 9, 1 <= q <= 5.
  Rational nonzero_rational() {
    long num = between(1, 9);
    if (below(2)) num = -num;
    Rational r(num, between(1, 5));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace toricq
