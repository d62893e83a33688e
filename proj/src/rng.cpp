#include "lpproj/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpproj {

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  while (u1 == 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) {
    throw std::invalid_argument("empty integer range");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(raw() % span);
}

LpVector random_vector(Rng& rng, int dimension, double lo, double hi) {
  std::vector<double> values(static_cast<std::size_t>(dimension));
  for (double& v : values) {
    v = rng.uniform(lo, hi);
  }
  return LpVector::from_dense(values);
}

LpVector random_direction(Rng& rng, int dimension, double p) {
  LpVector g;
  double n = 0.0;
  do {
    std::vector<double> values(static_cast<std::size_t>(dimension));
    for (double& v : values) {
      v = rng.normal();
    }
    g = LpVector::from_dense(values);
    n = norm(g, p);
  } while (n == 0.0);
  return (1.0 / n) * g;
}

}  // namespace lpproj
