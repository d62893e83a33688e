#include "lpproj/decomp.hpp"

#include <cmath>
#include <stdexcept>

namespace lpproj {

Decomposition semi_orthogonal(const LpVector& base, const LpVector& x,
                              double p) {
  if (base.is_zero()) {
    throw std::invalid_argument("decomposition base must be nonzero");
  }
  const double nb = norm(base, p);
  const double a = pairing(duality_map(base, p), x) / (nb * nb);
  return Decomposition{a, x - a * base};
}

bool in_tangent_set(const LpVector& base, const LpVector& v, double p,
                    double tol) {
  if (base.is_zero()) {
    throw std::invalid_argument("tangent set base must be nonzero");
  }
  if (v.is_zero()) {
    return true;
  }
  const double s = pairing(duality_map(base, p), v);
  return std::abs(s) <= tol * norm(base, p) * norm(v, p);
}

double strong_smoothness_ratio(const LpVector& base, const LpVector& v,
                               double p, double tangent_tol) {
  if (v.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  if (!in_tangent_set(base, v, p, tangent_tol)) {
    throw std::invalid_argument(
        "direction is not tangent to the base; the decay claim holds only on "
        "the tangent set");
  }
  return (norm(base + v, p) - norm(base, p)) / norm(v, p);
}

}  // namespace lpproj
