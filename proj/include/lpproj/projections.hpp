#pragma once

#include <cstdint>
#include <variant>

#include "lpproj/decomp.hpp"

namespace lpproj {

struct BallTarget {
  double r;
  double p;
};

struct CylinderTarget {
  double r;
  IndexSet coords;
  double p;
};

struct LineTarget {
  LpVector base;  // nonzero
  double p;
};

struct ConeTarget {
  MeasureSpacePtr space;
  double p;
};

using ProjectionTarget =
    std::variant<BallTarget, CylinderTarget, LineTarget, ConeTarget>;

/// Nearest point of the closed p-norm ball of radius r: identity inside,
/// radial scaling (r/||x||) x outside.
LpVector project_ball(const LpVector& x, double r, double p);

/// Cylinder {x : ||x restricted to coords|| <= r}: the masked part scales
/// radially, the complement passes through untouched. coords = all indices
/// reduces to the ball.
LpVector project_cylinder(const LpVector& x, double r, const IndexSet& coords,
                          double p);

/// Positive cone of L_p(S): pointwise positive part. Idempotent.
StepFunction project_cone(const StepFunction& f);

struct LineProjection {
  double t_star;
  LpVector point;  // t_star * base
  int iterations;
};

/// Projection onto span{base}, characterized by <J(x - t base), base> = 0.
/// Solved by bracketed bisection with secant refinement; the minimizer obeys
/// |t*| <= 2||x||/||base||, which gives the initial bracket. pairing_tol is
/// the absolute stopping tolerance on the pairing residual.
LineProjection project_line(const LpVector& x, const LpVector& base, double p,
                            double pairing_tol = 1e-10);

// Membership and boundary classification, relative tolerances.
bool contains(const BallTarget& t, const LpVector& x, double tol = 1e-9);
bool contains(const CylinderTarget& t, const LpVector& x, double tol = 1e-9);
bool contains(const LineTarget& t, const LpVector& x, double tol = 1e-9);
bool contains(const ConeTarget& t, const StepFunction& f, double tol = 1e-9);
bool on_boundary(const BallTarget& t, const LpVector& x, double tol = 1e-12);
bool on_boundary(const CylinderTarget& t, const LpVector& x,
                 double tol = 1e-12);

/// Smallest sampled value of <J(x - u), u - z> over `samples` random points z
/// of the target. When u is the metric projection of x the minimum stays
/// above -1e-9; a genuinely wrong u drives it negative. Statistical by
/// construction; deterministic for a fixed seed. Rejects u outside the
/// target.
double variational_margin(const LpVector& x, const LpVector& u,
                          const BallTarget& target, int samples,
                          std::uint64_t seed);
double variational_margin(const LpVector& x, const LpVector& u,
                          const CylinderTarget& target, int samples,
                          std::uint64_t seed);
double variational_margin(const LpVector& x, const LpVector& u,
                          const LineTarget& target, int samples,
                          std::uint64_t seed);
double variational_margin(const StepFunction& f, const StepFunction& u,
                          const ConeTarget& target, int samples,
                          std::uint64_t seed);

/// Independent numerical minimizer of ||x - z||_p over the target, kept free
/// of the closed-form projection formulas: quadratic-penalty continuation
/// with a damped Newton inner loop for ball and cylinder, golden-section on
/// t for lines, exact separable argmin for the cone. Supports dimension
/// (max participating index, or atom count) at most 6.
LpVector brute_force_project(const LpVector& x, const BallTarget& target);
LpVector brute_force_project(const LpVector& x, const CylinderTarget& target);
LineProjection brute_force_project(const LpVector& x,
                                   const LineTarget& target);
StepFunction brute_force_project(const StepFunction& f,
                                 const ConeTarget& target);

/// Fixed 3-norm counterexample showing the line projection is not linear and
/// the preimage of the base point is not convex: two directions v, w project
/// onto the base after translation, yet their convex combination does not.
struct LineNonlinearityReport {
  LpVector base;
  LpVector v;
  LpVector w;
  LpVector mix;            // (2/3) v + (1/3) w
  double t_v;              // 1
  double t_w;              // 1
  double t_mix;            // != 1
  double pairing_mix_base; // <J(mix), base> = -14 * cbrt(4)
  bool pass;
};

LineNonlinearityReport witness_line_nonlinearity();

/// A function outside the cone within eps of f: value flipped to -1 on a
/// single atom whose measure is below (eps/2)^p and whose f-mass is below
/// eps/2. Shows every f in the cone is a boundary point. Throws when the
/// space holds no small enough atom.
StepFunction witness_cone_empty_interior(const StepFunction& f, double eps,
                                         double p);

}  // namespace lpproj
