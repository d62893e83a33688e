#include "lpproj/derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpproj/rng.hpp"

namespace lpproj {

LpVector LinearOperator::apply(const LpVector& x) const { return map_(x); }

LinearOperator LinearOperator::identity() {
  return LinearOperator(OperatorKind::Identity, 1.0,
                        [](const LpVector& x) { return x; });
}

LinearOperator LinearOperator::zero() {
  return LinearOperator(OperatorKind::Zero, 0.0,
                        [](const LpVector&) { return LpVector{}; });
}

LinearOperator LinearOperator::ball_outside(const LpVector& base, double r,
                                            double p) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
  const double n = norm(base, p);
  if (!(n > r)) {
    throw std::invalid_argument("base must lie strictly outside the ball");
  }
  const double scale = r / n;
  const DualVector dual = duality_map(base, p);
  const double n_sq = n * n;
  auto map = [base, scale, dual, n_sq](const LpVector& x) {
    const double a = pairing(dual, x) / n_sq;
    return scale * (x - a * base);
  };
  // ||o(x)|| <= 2||x||, so the scaled map is bounded by 2r/||base||.
  return LinearOperator(OperatorKind::BallOutside, 1.0 + 2.0 * scale,
                        std::move(map));
}

LinearOperator LinearOperator::cylinder_outside(const LpVector& base, double r,
                                                const IndexSet& coords,
                                                double p) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("cylinder radius must be positive");
  }
  const LpVector base_m = mask(base, coords);
  const double n = norm(base_m, p);
  if (!(n > r)) {
    throw std::invalid_argument("base must lie strictly outside the cylinder");
  }
  const double scale = r / n;
  const DualVector dual = duality_map(base_m, p);
  const double n_sq = n * n;
  const IndexSet inside = coords;
  const IndexSet outside = coords.complement();
  auto map = [base_m, scale, dual, n_sq, inside, outside](const LpVector& u) {
    const LpVector u_m = mask(u, inside);
    const double a = pairing(dual, u_m) / n_sq;
    return scale * (u_m - a * base_m) + mask(u, outside);
  };
  return LinearOperator(OperatorKind::CylinderOutside, 1.0 + 2.0 * scale,
                        std::move(map));
}

FrechetResult frechet_ball(const LpVector& base, double r, double p,
                           double boundary_tol) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
  const double n = norm(base, p);
  if (std::abs(n - r) <= boundary_tol * r) {
    return NotDifferentiable{};
  }
  if (n < r) {
    return LinearOperator::identity();
  }
  return LinearOperator::ball_outside(base, r, p);
}

FrechetResult frechet_cylinder(const LpVector& base, double r,
                               const IndexSet& coords, double p,
                               double boundary_tol) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("cylinder radius must be positive");
  }
  const double n = norm(mask(base, coords), p);
  if (std::abs(n - r) <= boundary_tol * r) {
    return NotDifferentiable{};
  }
  if (n < r) {
    return LinearOperator::identity();
  }
  return LinearOperator::cylinder_outside(base, r, coords, p);
}

namespace {

constexpr double kSignTol = 1e-12;

// Sign of <J(base), w> with a relative dead zone. A pairing that vanishes
// to rounding means a tangent move, which exits the ball by strict
// convexity, hence Upward.
DirectionClass classify_by_pairing(const LpVector& base, const LpVector& w,
                                   double p) {
  const double s = pairing(duality_map(base, p), w);
  const double scale = norm(base, p) * norm(w, p);
  if (s < -kSignTol * scale) {
    return DirectionClass::Downward;
  }
  return DirectionClass::Upward;
}

void require_on_sphere(double n, double r) {
  if (std::abs(n - r) > 1e-12 * r) {
    throw std::invalid_argument("base point must lie on the boundary sphere");
  }
}

}  // namespace

DirectionClass classify_direction(const LpVector& base, const LpVector& w,
                                  const BallTarget& target) {
  if (w.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  require_on_sphere(norm(base, target.p), target.r);
  return classify_by_pairing(base, w, target.p);
}

DirectionClass classify_direction(const LpVector& base, const LpVector& w,
                                  const CylinderTarget& target) {
  if (w.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  const LpVector base_m = mask(base, target.coords);
  require_on_sphere(norm(base_m, target.p), target.r);
  const LpVector w_m = mask(w, target.coords);
  if (w_m.is_zero()) {
    return DirectionClass::Downward;  // slides along the cylinder surface
  }
  return classify_by_pairing(base_m, w_m, target.p);
}

LpVector gateaux_ball(const LpVector& base, const LpVector& w, double r,
                      double p) {
  if (w.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  require_on_sphere(norm(base, p), r);
  if (classify_by_pairing(base, w, p) == DirectionClass::Downward) {
    return w;
  }
  const double s = pairing(duality_map(base, p), w);
  return w - (s / (r * r)) * base;
}

LpVector gateaux_cylinder(const LpVector& base, const LpVector& w, double r,
                          const IndexSet& coords, double p) {
  if (w.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  const LpVector base_m = mask(base, coords);
  require_on_sphere(norm(base_m, p), r);
  const LpVector w_m = mask(w, coords);
  if (w_m.is_zero() ||
      classify_by_pairing(base_m, w_m, p) == DirectionClass::Downward) {
    return w;
  }
  const double s = pairing(duality_map(base_m, p), w_m);
  return w - (s / (r * r)) * base_m;
}

StepFunction gateaux_cone(const StepFunction& f, const StepFunction& g) {
  if (!same_space(f, g)) {
    throw std::invalid_argument("step functions live on different spaces");
  }
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double fv = f.values()[i];
    const double gv = g.values()[i];
    if (fv > 0.0) {
      values[i] = gv;
    } else if (fv < 0.0) {
      values[i] = 0.0;
    } else {
      values[i] = std::max(gv, 0.0);
    }
  }
  return StepFunction(f.space(), std::move(values));
}

std::vector<double> default_h_schedule() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

namespace {

void validate_schedule(std::span<const double> h_schedule) {
  if (h_schedule.empty()) {
    throw std::invalid_argument("step schedule must be nonempty");
  }
  for (std::size_t i = 0; i < h_schedule.size(); ++i) {
    if (!(h_schedule[i] > 0.0)) {
      throw std::invalid_argument("steps must be positive");
    }
    if (i > 0 && !(h_schedule[i] < h_schedule[i - 1])) {
      throw std::invalid_argument("steps must be strictly decreasing");
    }
  }
}

}  // namespace

GateauxQuotient numerical_gateaux(const VectorMap& project, const LpVector& x,
                                  const LpVector& w,
                                  std::span<const double> h_schedule) {
  if (w.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  validate_schedule(h_schedule);
  const LpVector at_x = project(x);
  GateauxQuotient result{LpVector{}, {}, true};
  LpVector previous;
  bool have_previous = false;
  double p_for_delta = 2.0;
  for (double h : h_schedule) {
    const LpVector quotient = (1.0 / h) * (project(x + h * w) - at_x);
    if (have_previous) {
      result.deltas.push_back(norm(quotient - previous, p_for_delta));
    }
    previous = quotient;
    have_previous = true;
    result.value = quotient;
  }
  result.converged =
      result.deltas.empty() || result.deltas.back() <= 1e-2;
  return result;
}

ConeGateauxQuotient numerical_gateaux(const StepFunctionMap& project,
                                      const StepFunction& f,
                                      const StepFunction& g,
                                      std::span<const double> h_schedule) {
  if (g.is_zero()) {
    throw std::invalid_argument("direction must be nonzero");
  }
  validate_schedule(h_schedule);
  const StepFunction at_f = project(f);
  ConeGateauxQuotient result{at_f, {}, true};
  StepFunction previous = at_f;
  bool have_previous = false;
  for (double h : h_schedule) {
    const StepFunction quotient = (1.0 / h) * (project(f + h * g) - at_f);
    if (have_previous) {
      result.deltas.push_back(norm(quotient - previous, 2.0));
    }
    previous = quotient;
    have_previous = true;
    result.value = quotient;
  }
  result.converged =
      result.deltas.empty() || result.deltas.back() <= 1e-2;
  return result;
}

bool ResidualTable::nonincreasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].max_ratio > rows[i - 1].max_ratio + slack) {
      return false;
    }
  }
  return true;
}

double ResidualTable::final_ratio() const {
  if (rows.empty()) {
    throw std::invalid_argument("empty residual table");
  }
  return rows.back().max_ratio;
}

ResidualTable frechet_residual(const VectorMap& project,
                               const LinearOperator& op, const LpVector& base,
                               std::span<const LpVector> directions,
                               std::span<const double> h_schedule) {
  validate_schedule(h_schedule);
  if (directions.empty()) {
    throw std::invalid_argument("need at least one probe direction");
  }
  const LpVector at_base = project(base);
  // p = 2 for the remainder norms; ratios compare against zero, so any fixed
  // norm works and the Euclidean one keeps tables comparable across p.
  ResidualTable table;
  for (double h : h_schedule) {
    double worst = 0.0;
    for (const LpVector& d : directions) {
      if (d.is_zero()) {
        throw std::invalid_argument("probe directions must be nonzero");
      }
      const LpVector step = h * d;
      const LpVector remainder = project(base + step) - at_base - op(step);
      worst = std::max(worst, norm(remainder, 2.0) / (h * norm(d, 2.0)));
    }
    table.rows.push_back({h, worst});
  }
  return table;
}

PairSampler gaussian_pair_sampler(const LpVector& center, int dimension,
                                  double p, std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [center, dimension, p, rng](double radius) {
    const LpVector d1 = random_direction(*rng, dimension, p);
    const LpVector d2 = random_direction(*rng, dimension, p);
    const LpVector u = center + (radius * rng->uniform()) * d1;
    const LpVector v = center + (radius * rng->uniform()) * d2;
    return std::make_pair(u, v);
  };
}

ResidualTable strict_frechet_residual(const VectorMap& project,
                                      const LinearOperator& op,
                                      const LpVector& base,
                                      const PairSampler& sampler,
                                      std::span<const double> h_schedule,
                                      int pairs_per_step) {
  validate_schedule(h_schedule);
  if (pairs_per_step < 1) {
    throw std::invalid_argument("need at least one pair per step");
  }
  (void)base;
  ResidualTable table;
  for (double h : h_schedule) {
    double worst = 0.0;
    for (int k = 0; k < pairs_per_step; ++k) {
      const auto [u, v] = sampler(h);
      const LpVector gap = u - v;
      if (gap.is_zero()) {
        continue;
      }
      const LpVector remainder = project(u) - project(v) - op(gap);
      worst = std::max(worst, norm(remainder, 2.0) / norm(gap, 2.0));
    }
    table.rows.push_back({h, worst});
  }
  return table;
}

SphereTwoSidedReport witness_sphere_nondiff(const LpVector& base, double r,
                                            double p) {
  require_on_sphere(norm(base, p), r);
  // Outward radial quotients (project((1+d) base) - project(base))/d vanish
  // identically, forcing a would-be derivative to annihilate base; inward
  // quotients equal base for every 0 < d < 1, forcing it to fix base.
  const auto outward = [&](double d) {
    return (1.0 / d) * (project_ball((1.0 + d) * base, r, p) -
                        project_ball(base, r, p));
  };
  const auto inward = [&](double d) {
    return (1.0 / d) * (project_ball(base, r, p) -
                        project_ball((1.0 - d) * base, r, p));
  };
  SphereTwoSidedReport report;
  report.outward_forced = outward(1e-3);
  report.inward_forced = inward(1e-3);
  report.disagreement =
      norm(report.inward_forced - report.outward_forced, p);
  const bool stable = outward(1e-1) == report.outward_forced &&
                      inward(1e-1) == report.inward_forced;
  report.pass = stable && report.outward_forced.is_zero() &&
                std::abs(report.disagreement - r) <= 1e-12 * r;
  return report;
}

namespace {

// Atoms eligible for a shrinking witness sequence: predicate filtered, then
// sorted by strictly decreasing weight so the measures tend downward.
std::vector<std::size_t> shrinking_atoms(const StepFunction& f,
                                         bool (*keep)(double, double),
                                         double bound, int steps,
                                         const char* what) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (keep(f.values()[i], bound)) {
      eligible.push_back(i);
    }
  }
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t a,
                                                  std::size_t b) {
    return f.space()->atoms()[a].weight > f.space()->atoms()[b].weight;
  });
  std::vector<std::size_t> chosen;
  double last_weight = std::numeric_limits<double>::infinity();
  for (std::size_t i : eligible) {
    const double weight = f.space()->atoms()[i].weight;
    if (weight < last_weight) {
      chosen.push_back(i);
      last_weight = weight;
      if (static_cast<int>(chosen.size()) == steps) {
        break;
      }
    }
  }
  if (static_cast<int>(chosen.size()) < steps) {
    throw std::invalid_argument(what);
  }
  return chosen;
}

StepFunction indicator_bump(const StepFunction& f, std::size_t atom,
                            double value) {
  std::vector<double> values(f.size(), 0.0);
  values[atom] = value;
  return StepFunction(f.space(), std::move(values));
}

}  // namespace

ConeInsideReport witness_cone_nondiff_inK(const StepFunction& f, double lambda,
                                          int n_steps) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be positive");
  }
  if (!f.is_nonnegative()) {
    throw std::invalid_argument("f must belong to the positive cone");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("need at least one step");
  }
  const auto chosen = shrinking_atoms(
      f, [](double v, double bound) { return v >= 0.0 && v <= bound; },
      lambda, n_steps,
      "not enough atoms with 0 <= f <= lambda of strictly decreasing weight");

  const double p = 3.0;  // any valid exponent; the ratio bound is p-free
  ConeInsideReport report;
  report.pass = true;
  for (std::size_t i : chosen) {
    const StepFunction bump = indicator_bump(f, i, 2.0 * lambda);
    const StepFunction f_piece = indicator_bump(f, i, f.values()[i]);
    const double ratio = norm(bump - f_piece, p) / norm(bump, p);
    report.atom_labels.push_back(f.space()->atoms()[i].label);
    report.measures.push_back(f.space()->atoms()[i].weight);
    report.ratios.push_back(ratio);
    report.pass = report.pass && ratio >= 0.5 - 1e-12;
  }
  return report;
}

ConeOutsideReport witness_cone_nondiff_outK(const StepFunction& f, double beta,
                                            int m_steps) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (f.is_nonnegative()) {
    throw std::invalid_argument("f must lie outside the positive cone");
  }
  if (m_steps < 1) {
    throw std::invalid_argument("need at least one step");
  }
  const auto chosen = shrinking_atoms(
      f, [](double v, double bound) { return v < 0.0 && v > -bound; }, beta,
      m_steps,
      "no atoms with -beta < f < 0 of strictly decreasing weight");

  const double p = 3.0;
  ConeOutsideReport report;
  report.half_identity = true;
  for (std::size_t i : chosen) {
    const StepFunction bump = indicator_bump(f, i, -2.0 * f.values()[i]);
    const double n = norm(bump, p);
    const StepFunction unit = (1.0 / n) * bump;
    report.atom_labels.push_back(f.space()->atoms()[i].label);
    report.measures.push_back(f.space()->atoms()[i].weight);
    report.unit_norms.push_back(norm(unit, p));

    const StepFunction shift =
        project_cone(f + bump) - project_cone(f) - 0.5 * bump;
    report.half_identity = report.half_identity && shift.is_zero();
  }
  report.pass = report.half_identity &&
                std::all_of(report.unit_norms.begin(),
                            report.unit_norms.end(), [](double n) {
                              return std::abs(n - 1.0) <= 1e-12;
                            });
  return report;
}

}  // namespace lpproj
