#pragma once

#include "lpproj/duality.hpp"

namespace lpproj {

/// Split of x against a fixed nonzero base: x = a * base + o with
/// <J(base), o> = 0. Both pieces depend linearly on x.
struct Decomposition {
  double a;
  LpVector o;
};

/// a = <J(base), x> / ||base||^2, o = x - a * base. base must be nonzero.
Decomposition semi_orthogonal(const LpVector& base, const LpVector& x,
                              double p);

/// Relative test |<J(base), v>| <= tol * ||base|| * ||v||; the origin always
/// passes.
bool in_tangent_set(const LpVector& base, const LpVector& v, double p,
                    double tol = 1e-9);

/// (||base + v|| - ||base||) / ||v|| for tangent v != 0. Decays to zero as v
/// shrinks inside the tangent set; rejected for non-tangent v, where the
/// decay claim fails.
double strong_smoothness_ratio(const LpVector& base, const LpVector& v,
                               double p, double tangent_tol = 1e-9);

}  // namespace lpproj
