#pragma once

#include "lpproj/lp_space.hpp"

namespace lpproj {

/// Element of the dual space l_q. Same sparse shape as LpVector; the wrapper
/// keeps primal and dual exponents from being mixed up in client code.
struct DualVector {
  LpVector coords;

  friend bool operator==(const DualVector&, const DualVector&) = default;
};

/// Normalized duality mapping J: l_p -> l_q,
///   (Jx)_i = |x_i|^(p-1) sign(x_i) / ||x||_p^(p-2),  J(0) = 0.
/// Satisfies <J(x), x> = ||x||_p^2 and ||J(x)||_q = ||x||_p, and is odd and
/// positively homogeneous of degree one.
DualVector duality_map(const LpVector& x, double p);

/// Inverse mapping J*: l_q -> l_p, the same formula with q in place of p.
/// J*(J(x)) = x because (p - 1)(q - 1) = 1.
LpVector duality_map_star(const DualVector& y, double q);

double norm(const DualVector& y, double q);

/// Canonical pairing <y, x> = sum_i y_i x_i over the common support.
double pairing(const DualVector& y, const LpVector& x);

/// One-sided directional derivative of the norm at x along y:
/// <J(x), y>/||x|| for x != 0 and ||y|| at x = 0.
double smoothness_psi(const LpVector& x, const LpVector& y, double p);

/// The two pairing bounds around mid = ||x||^2 - ||y||^2:
///   lower = 2<J(y), x - y>  <=  mid  <=  upper = 2<J(x), x - y>.
struct SandwichBounds {
  double lower;
  double mid;
  double upper;
};

SandwichBounds norm_square_sandwich(const LpVector& x, const LpVector& y,
                                    double p);

// L_p(S) counterparts on step functions. The dual is represented over the
// same atom list; the pairing integrates against the measure.
StepFunction duality_map(const StepFunction& f, double p);
double pairing(const StepFunction& dual, const StepFunction& f);

}  // namespace lpproj
