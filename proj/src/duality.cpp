#include "lpproj/duality.hpp"

#include <cmath>

namespace lpproj {

namespace {

// |v|^e sign(v), continuous in v with value 0 at 0 for every e > 0. Written
// this way so p < 2 never evaluates 0 to a negative power.
double signed_pow(double v, double e) {
  if (v == 0.0) {
    return 0.0;
  }
  const double mag = std::pow(std::abs(v), e);
  return v > 0.0 ? mag : -mag;
}

}  // namespace

DualVector duality_map(const LpVector& x, double p) {
  Exponent exponent(p);
  if (x.is_zero()) {
    return DualVector{LpVector{}};
  }
  const double scale = std::pow(norm(x, p), exponent.p() - 2.0);
  std::vector<Entry> out;
  out.reserve(x.entries().size());
  for (const Entry& e : x.entries()) {
    out.push_back({e.index, signed_pow(e.value, exponent.p() - 1.0) / scale});
  }
  return DualVector{LpVector(std::move(out))};
}

LpVector duality_map_star(const DualVector& y, double q) {
  return duality_map(y.coords, q).coords;
}

double norm(const DualVector& y, double q) { return norm(y.coords, q); }

double pairing(const DualVector& y, const LpVector& x) {
  double sum = 0.0;
  auto iy = y.coords.entries().begin();
  auto ix = x.entries().begin();
  while (iy != y.coords.entries().end() && ix != x.entries().end()) {
    if (iy->index < ix->index) {
      ++iy;
    } else if (ix->index < iy->index) {
      ++ix;
    } else {
      sum += iy->value * ix->value;
      ++iy;
      ++ix;
    }
  }
  return sum;
}

double smoothness_psi(const LpVector& x, const LpVector& y, double p) {
  if (x.is_zero()) {
    return norm(y, p);
  }
  return pairing(duality_map(x, p), y) / norm(x, p);
}

SandwichBounds norm_square_sandwich(const LpVector& x, const LpVector& y,
                                    double p) {
  const LpVector diff = x - y;
  const double nx = norm(x, p);
  const double ny = norm(y, p);
  return SandwichBounds{2.0 * pairing(duality_map(y, p), diff),
                        nx * nx - ny * ny,
                        2.0 * pairing(duality_map(x, p), diff)};
}

StepFunction duality_map(const StepFunction& f, double p) {
  Exponent exponent(p);
  if (f.is_zero()) {
    return StepFunction(f.space(), std::vector<double>(f.size(), 0.0));
  }
  const double scale = std::pow(norm(f, p), exponent.p() - 2.0);
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    values[i] = signed_pow(f.values()[i], exponent.p() - 1.0) / scale;
  }
  return StepFunction(f.space(), std::move(values));
}

double pairing(const StepFunction& dual, const StepFunction& f) {
  if (!same_space(dual, f)) {
    throw std::invalid_argument("step functions live on different spaces");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += dual.values()[i] * f.values()[i] * f.space()->atoms()[i].weight;
  }
  return sum;
}

}  // namespace lpproj
