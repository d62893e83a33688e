#include "lpproj/checks.hpp"

#include <cmath>
#include <functional>

#include "lpproj/derivatives.hpp"
#include "lpproj/rng.hpp"

namespace lpproj {

namespace {

class Suite {
 public:
  explicit Suite(const CheckOptions& options) : options_(options) {}

  // body(rng) returns a violation magnitude; <= 0 counts as a pass.
  void property(const std::string& name, int trials,
                const std::function<double(Rng&)>& body) {
    PropertyResult result{name, 0, 0, 0.0};
    Rng rng(options_.seed * 1000003ULL + results_.size() * 7919ULL + 1ULL);
    const int total = trials * options_.scale;
    for (int t = 0; t < total; ++t) {
      const double violation = body(rng);
      ++result.trials;
      if (violation > 0.0) {
        ++result.failures;
      }
      result.max_violation = std::max(result.max_violation, violation);
    }
    results_.push_back(std::move(result));
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

  const CheckOptions& options() const { return options_; }

 private:
  CheckOptions options_;
  std::vector<PropertyResult> results_;
};

double pick_p(Rng& rng, const std::vector<double>& p_values) {
  return p_values[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<int>(p_values.size()) - 1))];
}

LpVector nonzero_vector(Rng& rng, int dim) {
  LpVector x;
  do {
    x = random_vector(rng, dim, -2.0, 2.0);
  } while (x.is_zero());
  return x;
}

double componentwise_rel_gap(const LpVector& a, const LpVector& b,
                             double floor) {
  double worst = 0.0;
  const int dim = std::max(a.max_index(), b.max_index());
  for (int i = 1; i <= dim; ++i) {
    const double gap = std::abs(a[i] - b[i]);
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, gap / scale);
  }
  return worst;
}

StepFunction random_step_function(Rng& rng, const MeasureSpacePtr& space,
                                  double lo, double hi) {
  std::vector<double> values(space->size());
  for (double& v : values) {
    v = rng.uniform(lo, hi);
  }
  return StepFunction(space, std::move(values));
}

void lp_space_properties(Suite& suite) {
  const auto& opts = suite.options();
  suite.property("lp_space/triangle-inequality", 400, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(1, 6);
    const LpVector x = random_vector(rng, dim);
    const LpVector y = random_vector(rng, dim);
    return norm(x + y, p) - (norm(x, p) + norm(y, p)) - 1e-12;
  });
  suite.property("lp_space/homogeneity", 400, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const LpVector x = random_vector(rng, rng.uniform_int(1, 6));
    const double lambda = rng.uniform(-3.0, 3.0);
    const double gap = std::abs(norm(lambda * x, p) -
                                std::abs(lambda) * norm(x, p));
    return gap - 1e-12 * (1.0 + std::abs(lambda)) * (1.0 + norm(x, p));
  });
  suite.property("lp_space/mask-additivity", 400, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(1, 6);
    const LpVector x = random_vector(rng, dim);
    std::vector<int> members;
    for (int i = 1; i <= dim; ++i) {
      if (rng.uniform() < 0.5) {
        members.push_back(i);
      }
    }
    IndexSet m = IndexSet::of(members);
    if (rng.uniform() < 0.5) {
      m = m.complement();
    }
    if (mask(x, m) + mask(x, m.complement()) != x) {
      return 1.0;  // split must reassemble exactly
    }
    const double whole = std::pow(norm(x, p), p);
    const double parts = std::pow(norm(mask(x, m), p), p) +
                         std::pow(norm(mask(x, m.complement()), p), p);
    return std::abs(whole - parts) - 1e-12 * (1.0 + whole);
  });
  suite.property("lp_space/conjugate-involution", 200, [&](Rng& rng) {
    const double p = rng.uniform(1.01, 8.0);
    const double roundtrip = conjugate_exponent(conjugate_exponent(p));
    const double fixed_two = std::abs(conjugate_exponent(2.0) - 2.0);
    return std::max(std::abs(roundtrip - p) - 1e-12 * p, fixed_two);
  });
}

void duality_properties(Suite& suite) {
  const auto& opts = suite.options();
  const double tol = opts.rel_tol;
  suite.property("duality/pairing-identity", 2000, [&, tol](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const LpVector x = nonzero_vector(rng, rng.uniform_int(1, 6));
    const double n = norm(x, p);
    return std::abs(pairing(duality_map(x, p), x) - n * n) - tol * n * n;
  });
  suite.property("duality/norm-preservation", 2000, [&, tol](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const LpVector x = nonzero_vector(rng, rng.uniform_int(1, 6));
    const double n = norm(x, p);
    return std::abs(norm(duality_map(x, p), conjugate_exponent(p)) - n) -
           tol * n;
  });
  suite.property("duality/inversion", 2000, [&, tol](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const LpVector x = nonzero_vector(rng, rng.uniform_int(1, 6));
    const LpVector back =
        duality_map_star(duality_map(x, p), conjugate_exponent(p));
    return componentwise_rel_gap(back, x, 1e-6) - tol;
  });
  suite.property("duality/homogeneity", 1000, [&, tol](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const LpVector x = nonzero_vector(rng, rng.uniform_int(1, 6));
    const double lambda = rng.uniform(0.1, 3.0);
    const double scaled = componentwise_rel_gap(
        duality_map(lambda * x, p).coords, (lambda * duality_map(x, p).coords),
        1e-6);
    const double negated = componentwise_rel_gap(
        duality_map(-x, p).coords, -duality_map(x, p).coords, 1e-6);
    return std::max(scaled, negated) - tol;
  });
  suite.property("duality/sandwich", 2000, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(1, 6);
    const LpVector x = random_vector(rng, dim);
    const LpVector y = random_vector(rng, dim);
    const SandwichBounds b = norm_square_sandwich(x, y, p);
    const double slack = 1e-10 * (1.0 + std::abs(b.mid));
    return std::max(b.lower - b.mid, b.mid - b.upper) - slack;
  });
  suite.property("duality/hilbert-identity", 500, [&](Rng& rng) {
    const LpVector x = nonzero_vector(rng, rng.uniform_int(1, 6));
    return componentwise_rel_gap(duality_map(x, 2.0).coords, x, 1e-6) - 1e-12;
  });
}

void decomp_properties(Suite& suite) {
  const auto& opts = suite.options();
  suite.property("decomp/linearity", 500, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector x = random_vector(rng, dim);
    const LpVector y = random_vector(rng, dim);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    const Decomposition dx = semi_orthogonal(base, x, p);
    const Decomposition dy = semi_orthogonal(base, y, p);
    const Decomposition dz = semi_orthogonal(base, alpha * x + beta * y, p);
    const double scale =
        1.0 + std::abs(alpha) * (1.0 + norm(x, p)) +
        std::abs(beta) * (1.0 + norm(y, p));
    const double a_gap = std::abs(dz.a - alpha * dx.a - beta * dy.a);
    const double o_gap = norm(dz.o - (alpha * dx.o + beta * dy.o), p);
    return std::max(a_gap, o_gap) - 1e-10 * scale;
  });
  suite.property("decomp/reconstruction-and-orthogonality", 500,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector x = random_vector(rng, dim);
    const Decomposition d = semi_orthogonal(base, x, p);
    const double rebuild = norm(d.a * base + d.o - x, p);
    const double ortho = std::abs(pairing(duality_map(base, p), d.o));
    const double ortho_cap =
        1e-10 * norm(base, p) * (norm(d.o, p) + 1e-6);
    return std::max(rebuild - 1e-12 * (1.0 + norm(x, p)), ortho - ortho_cap);
  });
  suite.property("decomp/coefficient-bound", 500, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector u = random_vector(rng, dim);
    const Decomposition d = semi_orthogonal(base, u, p);
    return norm(d.a * base, p) - norm(u, p) * (1.0 + 1e-12) - 1e-15;
  });
  suite.property("decomp/tangential-bound", 500, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector u = random_vector(rng, dim);
    const Decomposition d = semi_orthogonal(base, u, p);
    return norm(d.o, p) - 2.0 * norm(u, p) * (1.0 + 1e-12) - 1e-15;
  });
  suite.property("decomp/convergence-at-base", 100, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector g = nonzero_vector(rng, dim);
    const double cap =
        (norm(g, p) / norm(base, p) + 2.0 * norm(g, p)) * (1.0 + 1e-9);
    double worst = 0.0;
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const Decomposition d = semi_orthogonal(base, base + t * g, p);
      worst = std::max(worst, std::abs(d.a - 1.0) - t * cap - 1e-12);
      worst = std::max(worst, norm(d.o, p) - t * cap - 1e-12);
    }
    return worst;
  });
  suite.property("decomp/tangent-cone-not-convex", 1, [&](Rng&) {
    const LpVector base{{1, 25.0}, {2, 37.0}, {3, 77.0}};
    const LpVector v{{1, 3.0}, {2, -2.0}, {3, -1.0}};
    const LpVector w{{1, 1.0}, {2, -3.0}, {3, 2.0}};
    const LpVector mix = (2.0 / 3.0) * v + (1.0 / 3.0) * w;
    if (!in_tangent_set(base, v, 3.0) || !in_tangent_set(base, w, 3.0)) {
      return 1.0;
    }
    if (in_tangent_set(base, mix, 3.0)) {
      return 1.0;
    }
    const double pair = pairing(duality_map(mix, 3.0), base);
    return std::abs(pair + 14.0 * std::cbrt(4.0)) - 1e-6;
  });
  suite.property("decomp/tangent-growth-decay", 50, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector probe = nonzero_vector(rng, dim);
    const Decomposition d = semi_orthogonal(base, probe, p);
    if (d.o.is_zero()) {
      return 0.0;
    }
    const LpVector tangent = (1.0 / norm(d.o, p)) * d.o;
    double previous = std::numeric_limits<double>::infinity();
    double worst = -1.0;
    for (double t : {1e-1, 1e-3, 1e-6}) {
      const double ratio = strong_smoothness_ratio(base, t * tangent, p);
      worst = std::max(worst, -ratio);              // ratio >= 0
      worst = std::max(worst, ratio - previous);    // and decaying
      previous = ratio;
    }
    return worst;
  });
}

void projection_properties(Suite& suite) {
  const auto& opts = suite.options();
  suite.property("projections/idempotence", 300, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(1, 6);
    const LpVector x = 3.0 * random_vector(rng, dim);
    const double r = rng.uniform(0.5, 2.0);
    double worst = 0.0;
    const LpVector pb = project_ball(x, r, p);
    worst = std::max(worst, distance(project_ball(pb, r, p), pb, p));
    IndexSet m = IndexSet::of({1, 3});
    const LpVector pc = project_cylinder(x, r, m, p);
    worst = std::max(worst, distance(project_cylinder(pc, r, m, p), pc, p));
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector pl = project_line(x, base, p).point;
    worst =
        std::max(worst, distance(project_line(pl, base, p).point, pl, p));
    return worst - 1e-8 * (1.0 + norm(x, p));
  });
  suite.property("projections/membership-and-margin", 25, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 5);
    const LpVector x = 3.0 * nonzero_vector(rng, dim);
    const double r = rng.uniform(0.5, 1.5);
    const std::uint64_t seed = rng.raw();
    double worst = 0.0;

    const BallTarget ball{r, p};
    const LpVector pb = project_ball(x, r, p);
    if (!contains(ball, pb)) {
      return 1.0;
    }
    worst = std::max(worst,
                     -variational_margin(x, pb, ball, 200, seed) - 1e-9);

    const CylinderTarget cyl{r, IndexSet::of({1, 2}), p};
    const LpVector pc = project_cylinder(x, r, cyl.coords, p);
    if (!contains(cyl, pc)) {
      return 1.0;
    }
    worst = std::max(worst,
                     -variational_margin(x, pc, cyl, 200, seed + 1) - 1e-9);

    const LineTarget line{nonzero_vector(rng, dim), p};
    const LpVector pl = project_line(x, line.base, p).point;
    if (!contains(line, pl)) {
      return 1.0;
    }
    worst = std::max(worst,
                     -variational_margin(x, pl, line, 200, seed + 2) - 1e-9);

    const ConeTarget cone{geometric_space(5), p};
    const StepFunction f = random_step_function(rng, cone.space, -2.0, 2.0);
    const StepFunction pf = project_cone(f);
    if (!contains(cone, pf)) {
      return 1.0;
    }
    worst = std::max(worst,
                     -variational_margin(f, pf, cone, 200, seed + 3) - 1e-9);
    return worst;
  });
  suite.property("projections/line-conditional-linearity", 100,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector x = random_vector(rng, dim);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    const double t_x = project_line(x, base, p).t_star;
    const double t_combo =
        project_line(alpha * x + beta * base, base, p).t_star;
    return std::abs(t_combo - (alpha * t_x + beta)) - 1e-6;
  });
  suite.property("projections/cone-calculus", 200, [&](Rng& rng) {
    const MeasureSpacePtr space = geometric_space(6);
    const StepFunction f = random_step_function(rng, space, 0.0, 2.0);
    const StepFunction g = random_step_function(rng, space, 0.0, 2.0);
    const StepFunction mixed = random_step_function(rng, space, -2.0, 2.0);
    const double lambda = rng.uniform(0.0, 3.0);
    double worst = 0.0;
    worst = std::max(worst, norm(project_cone(f) - f, 2.0));          // fixes K
    worst = std::max(worst, norm(project_cone(-f), 2.0));             // kills -K
    worst =
        std::max(worst, norm(project_cone(f + g) - (f + g), 2.0));    // additive
    worst = std::max(worst, norm(project_cone(lambda * mixed) -
                                 lambda * project_cone(mixed), 2.0));
    return worst - 1e-12;
  });
  suite.property("projections/cylinder-full-mask-is-ball", 1000,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(1, 6);
    const LpVector x = 3.0 * random_vector(rng, dim);
    const double r = rng.uniform(0.5, 2.0);
    const LpVector via_cylinder =
        project_cylinder(x, r, IndexSet::all(), p);
    const LpVector via_ball = project_ball(x, r, p);
    return distance(via_cylinder, via_ball, p) -
           1e-12 * (1.0 + norm(via_ball, p));
  });
  suite.property("projections/line-dual-characterization", 200,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const LpVector base = nonzero_vector(rng, dim);
    const LpVector x = random_vector(rng, dim);
    const LineProjection proj = project_line(x, base, p);
    const double residual =
        std::abs(pairing(duality_map(x - proj.point, p), base));
    return residual - 1e-8 * (1.0 + norm(x - proj.point, p) * norm(base, p));
  });
}

void derivative_properties(Suite& suite) {
  const auto& opts = suite.options();
  suite.property("derivatives/operator-linearity-boundedness", 100,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const double r = rng.uniform(0.5, 1.5);
    const LpVector outside = (2.0 + rng.uniform()) * random_direction(rng, dim, p) *
                             1.0;  // norm > r
    LinearOperator op = rng.uniform() < 0.5
                            ? LinearOperator::ball_outside(r * 2.0 * random_direction(rng, dim, p), r, p)
                            : LinearOperator::identity();
    (void)outside;
    double worst = 0.0;
    for (int probe = 0; probe < 10; ++probe) {
      const LpVector x = random_vector(rng, dim);
      const LpVector y = random_vector(rng, dim);
      const double alpha = rng.uniform(-2.0, 2.0);
      const double beta = rng.uniform(-2.0, 2.0);
      const LpVector gap =
          op(alpha * x + beta * y) - (alpha * op(x) + beta * op(y));
      const double scale = 1.0 + std::abs(alpha) + std::abs(beta);
      worst = std::max(worst, norm(gap, p) - 1e-10 * scale);
      worst = std::max(worst, norm(op(x), p) -
                                  op.norm_bound() * norm(x, p) *
                                      (1.0 + 1e-12));
    }
    return worst;
  });
  suite.property("derivatives/closed-vs-numerical-gateaux", 100,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const double r = rng.uniform(0.8, 1.5);
    const bool exterior = rng.uniform() < 0.5;
    const double target_norm =
        exterior ? rng.uniform(1.4, 2.5) * r : rng.uniform(0.2, 0.7) * r;
    const LpVector base = target_norm * random_direction(rng, dim, p);
    const LpVector w = nonzero_vector(rng, dim);
    const auto project = [r, p](const LpVector& v) {
      return project_ball(v, r, p);
    };
    const FrechetResult result = frechet_ball(base, r, p);
    const auto* op = std::get_if<LinearOperator>(&result);
    if (op == nullptr) {
      return 1.0;  // off-boundary points must be differentiable
    }
    const auto schedule = default_h_schedule();
    const GateauxQuotient numeric = numerical_gateaux(project, base, w, schedule);
    return norm(op->apply(w) - numeric.value, p) -
           1e-4 * (1.0 + norm(w, p));
  });
  suite.property("derivatives/residual-decay-exterior", 10, [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(3, 6);
    const double r = rng.uniform(0.8, 1.5);
    const LpVector base =
        rng.uniform(1.3, 2.5) * r * random_direction(rng, dim, p);
    const auto result = frechet_ball(base, r, p);
    const auto* op = std::get_if<LinearOperator>(&result);
    if (op == nullptr) {
      return 1.0;
    }
    std::vector<LpVector> directions;
    directions.push_back(base);
    for (int k = 0; k < 6; ++k) {
      directions.push_back(nonzero_vector(rng, dim));
    }
    const auto schedule = std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const ResidualTable table = frechet_residual(
        [r, p](const LpVector& v) { return project_ball(v, r, p); }, *op,
        base, directions, schedule);
    double worst = table.final_ratio() - 1e-4;
    if (!table.nonincreasing()) {
      worst = std::max(worst, 1.0);
    }
    return worst;
  });
  suite.property("derivatives/gateaux-positive-homogeneity", 100,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const double r = rng.uniform(0.5, 1.5);
    const LpVector base = r * random_direction(rng, dim, p);
    const LpVector w = nonzero_vector(rng, dim);
    const double lambda = rng.uniform(0.1, 4.0);
    const LpVector scaled = gateaux_ball(base, lambda * w, r, p);
    const LpVector unscaled = lambda * gateaux_ball(base, w, r, p);
    return distance(scaled, unscaled, p) - 1e-10 * (1.0 + lambda);
  });
  suite.property("derivatives/sphere-directional-asymmetry", 50,
                 [&](Rng& rng) {
    const double p = pick_p(rng, opts.p_values);
    const int dim = rng.uniform_int(2, 6);
    const double r = rng.uniform(0.5, 1.5);
    const LpVector base = r * random_direction(rng, dim, p);
    const LpVector along = gateaux_ball(base, base, r, p);
    const LpVector against = gateaux_ball(base, -base, r, p);
    double worst = norm(along, p) - 1e-10;            // D(base) = 0
    worst = std::max(worst, distance(against, -base, p) - 1e-12);
    const SphereTwoSidedReport report = witness_sphere_nondiff(base, r, p);
    if (!report.pass) {
      worst = std::max(worst, 1.0);
    }
    return worst;
  });
  suite.property("derivatives/cone-shrinking-bump-ratios", 20,
                 [&](Rng& rng) {
    const MeasureSpacePtr space = geometric_space(16);
    const double lambda = rng.uniform(0.5, 2.0);
    const StepFunction f = random_step_function(rng, space, 0.0, lambda);
    const ConeInsideReport report = witness_cone_nondiff_inK(f, lambda, 8);
    double worst = report.pass ? 0.0 : 1.0;
    for (double ratio : report.ratios) {
      worst = std::max(worst, 0.5 - 1e-12 - ratio);
    }
    return worst;
  });
  suite.property("derivatives/hilbert-ball-derivative", 100, [&](Rng& rng) {
    const double p = 2.0;
    const int dim = rng.uniform_int(2, 6);
    const double r = rng.uniform(0.5, 1.5);
    const LpVector base =
        rng.uniform(1.2, 3.0) * r * random_direction(rng, dim, p);
    const auto result = frechet_ball(base, r, p);
    const auto* op = std::get_if<LinearOperator>(&result);
    if (op == nullptr) {
      return 1.0;
    }
    const LpVector x = random_vector(rng, dim);
    // J is the identity at p = 2, so the derivative is the scaled
    // orthogonal-complement map computed with plain dot products.
    double dot = 0.0;
    double base_sq = 0.0;
    for (int i = 1; i <= dim; ++i) {
      dot += base[i] * x[i];
      base_sq += base[i] * base[i];
    }
    const LpVector expected =
        (r / norm(base, 2.0)) * (x - (dot / base_sq) * base);
    return distance(op->apply(x), expected, 2.0) - 1e-12;
  });
}

}  // namespace

std::vector<PropertyResult> run_property_checks(const CheckOptions& options) {
  if (options.p_values.empty()) {
    throw std::invalid_argument("need at least one exponent");
  }
  for (double p : options.p_values) {
    conjugate_exponent(p);  // validates
  }
  Suite suite(options);
  lp_space_properties(suite);
  duality_properties(suite);
  decomp_properties(suite);
  projection_properties(suite);
  derivative_properties(suite);
  return suite.take();
}

}  // namespace lpproj
