#pragma once

#include <cstdint>
#include <random>

namespace vdw {

/// Deterministic RNG wrapper. The draw primitives are fixed here rather
/// than taken from <random> distributions, whose output is
/// implementation-defined and would break run reproducibility across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [0, n). n must be positive. Always consumes
  /// exactly one generator draw.
  std::uint64_t below(std::uint64_t n) {
    return gen_() % n;
  }

  /// Uniform double in [0, 1).
  double unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace vdw
