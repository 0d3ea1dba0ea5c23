#pragma once

#include <cstdint>
#include <random>

#include "crtype/rational.hpp"

namespace crtype {

/// Seeded generator used by every randomized routine: std::mt19937_64 with
/// plain modulo reduction, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return (engine_() & 1U) != 0; }

  /// Numerator in [-max_num, max_num], denominator in [1, max_den].
  Rat small_rat(long max_num, long max_den) {
    long n = uniform(-max_num, max_num);
    long d = uniform(1, max_den);
    Rat q(n, d);
    q.canonicalize();
    return q;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crtype
