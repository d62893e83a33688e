#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lpproj/projections.hpp"

namespace lpproj {

enum class OperatorKind { Identity, Zero, BallOutside, CylinderOutside };

/// Bounded linear map on l_p representing a projection derivative.
class LinearOperator {
 public:
  OperatorKind kind() const noexcept { return kind_; }
  LpVector apply(const LpVector& x) const;
  LpVector operator()(const LpVector& x) const { return apply(x); }
  /// kappa with ||apply(x)|| <= kappa ||x||; at most 1 + 2r/||base|| for the
  /// ball and cylinder variants.
  double norm_bound() const noexcept { return bound_; }

  static LinearOperator identity();
  static LinearOperator zero();
  /// x -> (r/||base||) (x - (<J(base), x>/||base||^2) base), ||base|| > r.
  static LinearOperator ball_outside(const LpVector& base, double r, double p);
  /// Same map on the masked coordinates, identity on the complement.
  static LinearOperator cylinder_outside(const LpVector& base, double r,
                                         const IndexSet& coords, double p);

 private:
  LinearOperator(OperatorKind kind, double bound,
                 std::function<LpVector(const LpVector&)> map)
      : kind_(kind), bound_(bound), map_(std::move(map)) {}

  OperatorKind kind_;
  double bound_;
  std::function<LpVector(const LpVector&)> map_;
};

/// First-class "no derivative here" result; boundary points genuinely lack
/// one, so this is a value rather than an error.
struct NotDifferentiable {};

using FrechetResult = std::variant<LinearOperator, NotDifferentiable>;

/// Derivative of project_ball at base: identity strictly inside, the scaled
/// tangential map strictly outside, NotDifferentiable on the sphere
/// (|  ||base|| - r  | within boundary_tol * r).
FrechetResult frechet_ball(const LpVector& base, double r, double p,
                           double boundary_tol = 1e-12);
FrechetResult frechet_cylinder(const LpVector& base, double r,
                               const IndexSet& coords, double p,
                               double boundary_tol = 1e-12);

/// At a boundary point: directions that exit the target vs directions that
/// keep it. Tangent moves exit for the ball and cylinder (strict convexity),
/// so they classify Upward; a direction with zero masked part slides along
/// the cylinder and classifies Downward.
enum class DirectionClass { Upward, Downward };

DirectionClass classify_direction(const LpVector& base, const LpVector& w,
                                  const BallTarget& target);
DirectionClass classify_direction(const LpVector& base, const LpVector& w,
                                  const CylinderTarget& target);

/// One-sided directional derivative of project_ball at a sphere point:
/// w - (<J(base), w>/r^2) base for Upward w, w itself for Downward w.
LpVector gateaux_ball(const LpVector& base, const LpVector& w, double r,
                      double p);
LpVector gateaux_cylinder(const LpVector& base, const LpVector& w, double r,
                          const IndexSet& coords, double p);

/// Pointwise directional derivative of project_cone: g where f > 0, 0 where
/// f < 0, max(g, 0) where f = 0.
StepFunction gateaux_cone(const StepFunction& f, const StepFunction& g);

using VectorMap = std::function<LpVector(const LpVector&)>;
using StepFunctionMap = std::function<StepFunction(const StepFunction&)>;

/// 1e-1 down to 1e-6; smaller steps hit double-precision cancellation.
std::vector<double> default_h_schedule();

/// Forward-difference quotients (project(x + h w) - project(x)) / h down the
/// schedule. value is the quotient at the smallest step; deltas hold the
/// norms of successive quotient differences, which must shrink for the
/// one-sided limit to exist (diverged when the last delta exceeds 1e-2).
struct GateauxQuotient {
  LpVector value;
  std::vector<double> deltas;
  bool converged;
};

GateauxQuotient numerical_gateaux(const VectorMap& project, const LpVector& x,
                                  const LpVector& w,
                                  std::span<const double> h_schedule);

struct ConeGateauxQuotient {
  StepFunction value;
  std::vector<double> deltas;
  bool converged;
};

ConeGateauxQuotient numerical_gateaux(const StepFunctionMap& project,
                                      const StepFunction& f,
                                      const StepFunction& g,
                                      std::span<const double> h_schedule);

struct ResidualRow {
  double h;
  double max_ratio;
};

/// First-order remainder ratios per step size, aggregated as the max over
/// probe directions. Ratios decaying with h certify the candidate operator;
/// ratios stuck away from zero refute it.
struct ResidualTable {
  std::vector<ResidualRow> rows;

  bool nonincreasing(double slack = 1e-12) const;
  double final_ratio() const;
};

ResidualTable frechet_residual(const VectorMap& project,
                               const LinearOperator& op, const LpVector& base,
                               std::span<const LpVector> directions,
                               std::span<const double> h_schedule);

/// Produces (u, v) pairs inside the ball of the given radius around a fixed
/// center; used by the two-point residual probe.
using PairSampler =
    std::function<std::pair<LpVector, LpVector>(double radius)>;

PairSampler gaussian_pair_sampler(const LpVector& center, int dimension,
                                  double p, std::uint64_t seed);

/// Two-point remainder ||project(u) - project(v) - op(u - v)|| / ||u - v||
/// over sampled pairs in shrinking balls around base; the max per radius.
ResidualTable strict_frechet_residual(const VectorMap& project,
                                      const LinearOperator& op,
                                      const LpVector& base,
                                      const PairSampler& sampler,
                                      std::span<const double> h_schedule,
                                      int pairs_per_step);

/// Radial two-sided probe at a sphere point: the outward quotient forces a
/// would-be derivative to send base to the origin, the inward quotient
/// forces it to fix base. No linear map does both; the disagreement norm is
/// exactly r.
struct SphereTwoSidedReport {
  LpVector outward_forced;
  LpVector inward_forced;
  double disagreement;
  bool pass;
};

SphereTwoSidedReport witness_sphere_nondiff(const LpVector& base, double r,
                                            double p);

/// Shrinking-bump obstruction at f inside the cone: along f - g_n with
/// g_n = 2*lambda on a vanishing atom, the first-order remainder ratio
/// ||g_n - f_n|| / ||g_n|| stays >= 1/2, so no derivative exists at f.
/// Requires atoms with 0 <= f <= lambda of strictly decreasing weight.
struct ConeInsideReport {
  std::vector<int> atom_labels;
  std::vector<double> measures;
  std::vector<double> ratios;  // each in [1/2, 1]
  bool pass;
};

ConeInsideReport witness_cone_nondiff_inK(const StepFunction& f, double lambda,
                                          int n_steps);

/// Obstruction at f outside the cone: bumps h_m = -2f on vanishing atoms
/// where -beta < f < 0 keep unit norm after normalization, while a
/// derivative would force them to vanish. half_identity records that
/// project_cone(f + h_m) - project_cone(f) equals h_m / 2 exactly on every
/// step.
struct ConeOutsideReport {
  std::vector<int> atom_labels;
  std::vector<double> measures;
  std::vector<double> unit_norms;  // each exactly 1
  bool half_identity;
  bool pass;
};

ConeOutsideReport witness_cone_nondiff_outK(const StepFunction& f, double beta,
                                            int m_steps);

}  // namespace lpproj
