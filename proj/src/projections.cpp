#include "lpproj/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpproj/rng.hpp"

namespace lpproj {

LpVector project_ball(const LpVector& x, double r, double p) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
  const double n = norm(x, p);
  if (n <= r) {
    return x;
  }
  return (r / n) * x;
}

LpVector project_cylinder(const LpVector& x, double r, const IndexSet& coords,
                          double p) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("cylinder radius must be positive");
  }
  const LpVector x_m = mask(x, coords);
  const double n = norm(x_m, p);
  if (n <= r) {
    return x;
  }
  return (r / n) * x_m + mask(x, coords.complement());
}

StepFunction project_cone(const StepFunction& f) {
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    values[i] = std::max(f.values()[i], 0.0);
  }
  return StepFunction(f.space(), std::move(values));
}

LineProjection project_line(const LpVector& x, const LpVector& base, double p,
                            double pairing_tol) {
  if (base.is_zero()) {
    throw std::invalid_argument("line base must be nonzero");
  }
  Exponent exponent(p);
  const auto phi = [&](double t) {
    return pairing(duality_map(x - t * base, p), base);
  };

  // phi is continuous and strictly decreasing, and the minimizer satisfies
  // |t*| <= 2||x||/||base||; the widened bracket therefore straddles a sign
  // change.
  const double reach = 2.0 * norm(x, p) / norm(base, p) + 1.0;
  double lo = -reach;
  double hi = reach;
  double f_lo = phi(lo);
  double f_hi = phi(hi);
  if (f_lo == 0.0) {
    return LineProjection{lo, lo * base, 0};
  }
  if (f_hi == 0.0) {
    return LineProjection{hi, hi * base, 0};
  }
  if (f_lo < 0.0 || f_hi > 0.0) {
    throw std::runtime_error(
        "line projection bracket lost its sign change; input is numerically "
        "corrupt");
  }

  double t = 0.5 * (lo + hi);
  int iterations = 0;
  for (; iterations < 200; ++iterations) {
    const double f_t = phi(t);
    if (std::abs(f_t) <= pairing_tol) {
      break;
    }
    if (f_t > 0.0) {
      lo = t;
      f_lo = f_t;
    } else {
      hi = t;
      f_hi = f_t;
    }
    if (hi - lo <=
        4.0 * std::numeric_limits<double>::epsilon() *
            std::max({1.0, std::abs(lo), std::abs(hi)})) {
      break;  // bracket collapsed to machine precision around the root
    }
    // Secant proposal, falling back to bisection whenever it leaves the
    // bracket or on alternate iterations to guarantee progress.
    double next = 0.5 * (lo + hi);
    if (iterations % 2 == 0 && f_lo != f_hi) {
      const double secant = lo + (hi - lo) * f_lo / (f_lo - f_hi);
      if (secant > lo && secant < hi) {
        next = secant;
      }
    }
    t = next;
  }
  return LineProjection{t, t * base, iterations};
}

bool contains(const BallTarget& t, const LpVector& x, double tol) {
  return norm(x, t.p) <= t.r * (1.0 + tol);
}

bool contains(const CylinderTarget& t, const LpVector& x, double tol) {
  return norm(mask(x, t.coords), t.p) <= t.r * (1.0 + tol);
}

bool contains(const LineTarget& t, const LpVector& x, double tol) {
  if (t.base.is_zero()) {
    throw std::invalid_argument("line base must be nonzero");
  }
  if (x.is_zero()) {
    return true;
  }
  const Entry* pivot = nullptr;
  for (const Entry& e : t.base.entries()) {
    if (pivot == nullptr || std::abs(e.value) > std::abs(pivot->value)) {
      pivot = &e;
    }
  }
  const double scale = x[pivot->index] / pivot->value;
  return distance(x, scale * t.base, t.p) <= tol * (1.0 + norm(x, t.p));
}

bool contains(const ConeTarget& t, const StepFunction& f, double tol) {
  double scale = 1.0;
  for (double v : f.values()) {
    scale = std::max(scale, std::abs(v));
  }
  return std::all_of(f.values().begin(), f.values().end(),
                     [&](double v) { return v >= -tol * scale; });
}

bool on_boundary(const BallTarget& t, const LpVector& x, double tol) {
  return std::abs(norm(x, t.p) - t.r) <= tol * t.r;
}

bool on_boundary(const CylinderTarget& t, const LpVector& x, double tol) {
  return std::abs(norm(mask(x, t.coords), t.p) - t.r) <= tol * t.r;
}

namespace {

int ambient_dimension(const LpVector& x, const LpVector& u) {
  return std::max({1, x.max_index(), u.max_index()});
}

}  // namespace

double variational_margin(const LpVector& x, const LpVector& u,
                          const BallTarget& target, int samples,
                          std::uint64_t seed) {
  if (!contains(target, u)) {
    throw std::invalid_argument("candidate projection lies outside the ball");
  }
  const DualVector dual = duality_map(x - u, target.p);
  const int dim = ambient_dimension(x, u);
  Rng rng(seed);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const LpVector dir = random_direction(rng, dim, target.p);
    const double rho =
        target.r * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    const LpVector z = rho * dir;
    margin = std::min(margin, pairing(dual, u - z));
  }
  return margin;
}

double variational_margin(const LpVector& x, const LpVector& u,
                          const CylinderTarget& target, int samples,
                          std::uint64_t seed) {
  if (!contains(target, u)) {
    throw std::invalid_argument(
        "candidate projection lies outside the cylinder");
  }
  const DualVector dual = duality_map(x - u, target.p);
  const int dim = ambient_dimension(x, u);
  std::vector<int> masked;
  std::vector<int> free;
  for (int i = 1; i <= dim; ++i) {
    (target.coords.contains(i) ? masked : free).push_back(i);
  }
  Rng rng(seed);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    std::vector<Entry> entries;
    if (!masked.empty()) {
      const int mdim = static_cast<int>(masked.size());
      const LpVector dir = random_direction(rng, mdim, target.p);
      const double rho =
          target.r * std::pow(rng.uniform(), 1.0 / static_cast<double>(mdim));
      for (const Entry& e : dir.entries()) {
        entries.push_back(
            {masked[static_cast<std::size_t>(e.index) - 1], rho * e.value});
      }
    }
    for (int i : free) {
      entries.push_back({i, u[i] + rng.normal()});
    }
    const LpVector z{std::move(entries)};
    margin = std::min(margin, pairing(dual, u - z));
  }
  return margin;
}

double variational_margin(const LpVector& x, const LpVector& u,
                          const LineTarget& target, int samples,
                          std::uint64_t seed) {
  if (!contains(target, u)) {
    throw std::invalid_argument("candidate projection lies outside the line");
  }
  const DualVector dual = duality_map(x - u, target.p);
  const double base_norm = norm(target.base, target.p);
  const double reach =
      x.is_zero() ? 1.0 : 4.0 * norm(x, target.p) / base_norm;
  Rng rng(seed);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const double t = rng.uniform(-reach, reach);
    margin = std::min(margin, pairing(dual, u - t * target.base));
  }
  return margin;
}

double variational_margin(const StepFunction& f, const StepFunction& u,
                          const ConeTarget& target, int samples,
                          std::uint64_t seed) {
  if (!same_space(f, u)) {
    throw std::invalid_argument("step functions live on different spaces");
  }
  if (!contains(target, u)) {
    throw std::invalid_argument("candidate projection lies outside the cone");
  }
  const StepFunction dual = duality_map(f - u, target.p);
  Rng rng(seed);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    std::vector<double> values(u.size());
    for (double& v : values) {
      v = std::abs(rng.normal());
    }
    const StepFunction z(u.space(), std::move(values));
    margin = std::min(margin, pairing(dual, u - z));
  }
  return margin;
}

// ---------------------------------------------------------------------------
// Brute-force oracle.
//
// Ball and cylinder instances are solved as unconstrained minimization of
//   F(z) = sum_i |x_i - z_i|^p + mu * max(0, sum_{i in M} |z_i|^p - r^p)^2
// with the penalty weight mu ramped upward and a Levenberg-damped Newton
// inner loop. Nothing below uses the radial projection formulas, so the
// result is an independent check of them.
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxOracleDimension = 6;

double signed_pow(double v, double e) {
  if (v == 0.0) {
    return 0.0;
  }
  const double mag = std::pow(std::abs(v), e);
  return v > 0.0 ? mag : -mag;
}

double abs_pow(double v, double e) { return std::pow(std::abs(v), e); }

// Solves H d = g in place by Gaussian elimination with partial pivoting.
// Returns false on a vanishing pivot.
bool solve_dense(std::vector<std::vector<double>> h, std::vector<double> g,
                 std::vector<double>& d) {
  const std::size_t n = g.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(h[row][col]) > std::abs(h[pivot][col])) {
        pivot = row;
      }
    }
    if (h[pivot][col] == 0.0) {
      return false;
    }
    std::swap(h[pivot], h[col]);
    std::swap(g[pivot], g[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = h[row][col] / h[col][col];
      for (std::size_t k = col; k < n; ++k) {
        h[row][k] -= factor * h[col][k];
      }
      g[row] -= factor * g[col];
    }
  }
  d.assign(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double sum = g[row];
    for (std::size_t k = row + 1; k < n; ++k) {
      sum -= h[row][k] * d[k];
    }
    d[row] = sum / h[row][row];
  }
  return true;
}

struct PenaltyProblem {
  std::vector<double> x;
  std::vector<bool> constrained;
  double r;
  double p;
  double mu;

  double constraint_gap(const std::vector<double>& z) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (constrained[i]) {
        sum += abs_pow(z[i], p);
      }
    }
    return sum - std::pow(r, p);
  }

  double objective(const std::vector<double>& z) const {
    double dist = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      dist += abs_pow(x[i] - z[i], p);
    }
    const double c = std::max(constraint_gap(z), 0.0);
    return dist + mu * c * c;
  }

  void gradient(const std::vector<double>& z, std::vector<double>& g) const {
    const double c = std::max(constraint_gap(z), 0.0);
    g.assign(z.size(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      g[i] = -p * signed_pow(x[i] - z[i], p - 1.0);
      if (c > 0.0 && constrained[i]) {
        g[i] += 2.0 * mu * c * p * signed_pow(z[i], p - 1.0);
      }
    }
  }

  void hessian(const std::vector<double>& z,
               std::vector<std::vector<double>>& h) const {
    const std::size_t n = z.size();
    const double c = std::max(constraint_gap(z), 0.0);
    h.assign(n, std::vector<double>(n, 0.0));
    // |u|^(p-2) blows up at u = 0 for p < 2; the clamp keeps the damped
    // Newton step finite without disturbing the optimum.
    const auto curvature = [&](double u) {
      return p * (p - 1.0) * abs_pow(std::max(std::abs(u), 1e-14), p - 2.0);
    };
    for (std::size_t i = 0; i < n; ++i) {
      h[i][i] = curvature(x[i] - z[i]);
    }
    if (c > 0.0) {
      std::vector<double> grad_c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (constrained[i]) {
          grad_c[i] = p * signed_pow(z[i], p - 1.0);
          h[i][i] += 2.0 * mu * c * curvature(z[i]);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i][j] += 2.0 * mu * grad_c[i] * grad_c[j];
        }
      }
    }
  }
};

void newton_minimize(const PenaltyProblem& problem, std::vector<double>& z) {
  const std::size_t n = z.size();
  std::vector<double> g;
  std::vector<std::vector<double>> h;
  std::vector<double> d;
  double damping = 1e-8;
  double f = problem.objective(z);
  for (int iter = 0; iter < 300; ++iter) {
    problem.gradient(z, g);
    double g_inf = 0.0;
    for (double v : g) {
      g_inf = std::max(g_inf, std::abs(v));
    }
    if (g_inf <= 1e-10 * std::max(1.0, f)) {
      break;
    }
    problem.hessian(z, h);
    for (std::size_t i = 0; i < n; ++i) {
      h[i][i] += damping;
    }
    std::vector<double> neg_g(n);
    for (std::size_t i = 0; i < n; ++i) {
      neg_g[i] = -g[i];
    }
    if (!solve_dense(h, neg_g, d)) {
      damping *= 10.0;
      continue;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      slope += g[i] * d[i];
    }
    if (slope >= 0.0) {
      damping *= 10.0;
      continue;
    }
    double step = 1.0;
    bool accepted = false;
    std::vector<double> trial(n);
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = z[i] + step * d[i];
      }
      const double f_trial = problem.objective(trial);
      if (f_trial <= f + 1e-4 * step * slope) {
        z = trial;
        f = f_trial;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (accepted) {
      damping = std::max(damping / 3.0, 1e-12);
    } else {
      damping *= 10.0;
    }
  }
}

LpVector penalty_project(const LpVector& x, double r, double p,
                         const IndexSet& constrained_coords) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("radius must be positive");
  }
  Exponent exponent(p);
  const int dim = std::max(1, x.max_index());
  if (dim > kMaxOracleDimension) {
    throw std::invalid_argument("brute-force oracle supports dimension <= 6");
  }
  PenaltyProblem problem;
  problem.x = x.to_dense(dim);
  problem.constrained.resize(static_cast<std::size_t>(dim));
  for (int i = 1; i <= dim; ++i) {
    problem.constrained[static_cast<std::size_t>(i) - 1] =
        constrained_coords.contains(i);
  }
  problem.r = r;
  problem.p = p;
  problem.mu = 0.0;
  if (problem.constraint_gap(problem.x) <= 0.0) {
    return x;  // feasible input, the distance already vanishes at z = x
  }
  std::vector<double> z(static_cast<std::size_t>(dim), 0.0);
  for (double mu : {1e2, 1e4, 1e6, 1e8, 1e10}) {
    problem.mu = mu;
    newton_minimize(problem, z);
  }
  return LpVector::from_dense(z);
}

}  // namespace

LpVector brute_force_project(const LpVector& x, const BallTarget& target) {
  return penalty_project(x, target.r, target.p, IndexSet::all());
}

LpVector brute_force_project(const LpVector& x, const CylinderTarget& target) {
  if (!target.coords.is_cofinite()) {
    for (int i : target.coords.finite_part()) {
      if (i > kMaxOracleDimension) {
        throw std::invalid_argument(
            "brute-force oracle supports dimension <= 6");
      }
    }
  }
  return penalty_project(x, target.r, target.p, target.coords);
}

LineProjection brute_force_project(const LpVector& x,
                                   const LineTarget& target) {
  if (target.base.is_zero()) {
    throw std::invalid_argument("line base must be nonzero");
  }
  if (std::max(x.max_index(), target.base.max_index()) > kMaxOracleDimension) {
    throw std::invalid_argument("brute-force oracle supports dimension <= 6");
  }
  const double p = target.p;
  const auto objective = [&](double t) {
    return norm(x - t * target.base, p);
  };
  double lo = -(2.0 * norm(x, p) / norm(target.base, p) + 1.0);
  double hi = -lo;
  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - inv_golden * (hi - lo);
  double m2 = lo + inv_golden * (hi - lo);
  double f1 = objective(m1);
  double f2 = objective(m2);
  int iterations = 0;
  while (hi - lo > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)) &&
         iterations < 400) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_golden * (hi - lo);
      f1 = objective(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_golden * (hi - lo);
      f2 = objective(m2);
    }
    ++iterations;
  }
  const double t = 0.5 * (lo + hi);
  return LineProjection{t, t * target.base, iterations};
}

StepFunction brute_force_project(const StepFunction& f,
                                 const ConeTarget& target) {
  (void)target;
  if (f.size() > kMaxOracleDimension) {
    throw std::invalid_argument("brute-force oracle supports dimension <= 6");
  }
  // The objective separates per atom, so each coordinate minimizes
  // |f_i - z_i| over z_i >= 0 independently; the argmin is the positive part.
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    values[i] = std::max(f.values()[i], 0.0);
  }
  return StepFunction(f.space(), std::move(values));
}

LineNonlinearityReport witness_line_nonlinearity() {
  const double p = 3.0;
  const LpVector base{{1, 25.0}, {2, 37.0}, {3, 77.0}};
  const LpVector v{{1, 3.0}, {2, -2.0}, {3, -1.0}};
  const LpVector w{{1, 1.0}, {2, -3.0}, {3, 2.0}};
  const LpVector mix = (2.0 / 3.0) * v + (1.0 / 3.0) * w;

  LineNonlinearityReport report;
  report.base = base;
  report.v = v;
  report.w = w;
  report.mix = mix;
  report.t_v = project_line(v + base, base, p).t_star;
  report.t_w = project_line(w + base, base, p).t_star;
  report.t_mix = project_line(mix + base, base, p).t_star;
  report.pairing_mix_base = pairing(duality_map(mix, p), base);

  const double expected_pairing = -14.0 * std::cbrt(4.0);
  report.pass = std::abs(report.t_v - 1.0) <= 1e-8 &&
                std::abs(report.t_w - 1.0) <= 1e-8 &&
                std::abs(report.t_mix - 1.0) > 1e-3 &&
                std::abs(report.pairing_mix_base - expected_pairing) <= 1e-6;
  return report;
}

StepFunction witness_cone_empty_interior(const StepFunction& f, double eps,
                                         double p) {
  Exponent exponent(p);
  if (!(eps > 0.0)) {
    throw std::invalid_argument("eps must be positive");
  }
  if (!f.is_nonnegative()) {
    throw std::invalid_argument("f must belong to the positive cone");
  }
  const double half = eps / 2.0;
  const double weight_cap = std::pow(half, p);
  int chosen = -1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double weight = f.space()->atoms()[i].weight;
    if (weight >= weight_cap) {
      continue;
    }
    const double f_mass =
        std::pow(abs_pow(f.values()[i], p) * weight, 1.0 / p);
    if (f_mass >= half) {
      continue;
    }
    if (chosen < 0 ||
        weight < f.space()->atoms()[static_cast<std::size_t>(chosen)].weight) {
      chosen = static_cast<int>(i);
    }
  }
  if (chosen < 0) {
    throw std::invalid_argument(
        "no atom is small enough for this eps; supply a space with finer "
        "atoms");
  }
  std::vector<double> values = f.values();
  values[static_cast<std::size_t>(chosen)] = -1.0;
  return StepFunction(f.space(), std::move(values));
}

}  // namespace lpproj
