#pragma once

#include <cstdint>
#include <random>

#include "lpproj/lp_space.hpp"

namespace lpproj {

/// Seeded generator with hand-rolled distributions so that a fixed seed
/// yields identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Dense random vector on coordinates 1..dimension, entries uniform in
/// [lo, hi].
LpVector random_vector(Rng& rng, int dimension, double lo = -1.0,
                       double hi = 1.0);

/// Gaussian direction normalized to unit p-norm.
LpVector random_direction(Rng& rng, int dimension, double p);

}  // namespace lpproj
