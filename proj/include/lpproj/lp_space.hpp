#pragma once

#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace lpproj {

/// Conjugate of a norm exponent: the q with 1/p + 1/q = 1.
/// Rejects p outside (1, inf); p = 1 and p = infinity are not supported
/// because the underlying spaces stop being uniformly convex and smooth.
double conjugate_exponent(double p);

/// Validated exponent pair (p, q).
class Exponent {
 public:
  explicit Exponent(double p) : p_(p), q_(conjugate_exponent(p)) {}
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  Exponent conjugate() const { return Exponent(q_); }

 private:
  double p_;
  double q_;
};

struct Entry {
  int index;  // 1-based coordinate index
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Finite-support vector in l_p: sparse entries sorted by index, exact zeros
/// dropped. Coordinates outside the stored support are zero. The normal form
/// makes equality canonical.
class LpVector {
 public:
  LpVector() = default;
  explicit LpVector(std::vector<Entry> entries);
  LpVector(std::initializer_list<Entry> entries);

  /// values[i] becomes coordinate i + 1.
  static LpVector from_dense(std::span<const double> values);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  int max_index() const noexcept {
    return entries_.empty() ? 0 : entries_.back().index;
  }
  /// Coordinate access; 0.0 for indices outside the support.
  double operator[](int index) const;
  std::vector<double> to_dense(int dimension) const;

  friend bool operator==(const LpVector&, const LpVector&) = default;

 private:
  std::vector<Entry> entries_;
};

LpVector operator+(const LpVector& x, const LpVector& y);
LpVector operator-(const LpVector& x, const LpVector& y);
LpVector operator-(const LpVector& x);
LpVector operator*(double scalar, const LpVector& x);

/// (sum_i |x_i|^p)^(1/p); zero exactly when x is the origin.
double norm(const LpVector& x, double p);
double distance(const LpVector& x, const LpVector& y, double p);

/// Finite or cofinite set of positive integers. Membership is total: a
/// cofinite set stores the excluded indices.
class IndexSet {
 public:
  static IndexSet of(std::vector<int> members);
  static IndexSet all();

  IndexSet complement() const;
  bool contains(int index) const;
  bool is_cofinite() const noexcept { return complemented_; }
  /// The stored member (or excluded, when cofinite) indices, sorted.
  const std::vector<int>& finite_part() const noexcept { return members_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexSet(std::vector<int> members, bool complemented);

  std::vector<int> members_;
  bool complemented_ = false;
};

/// Coordinates of x inside m, zero outside. mask(x, m) + mask(x, ~m) == x
/// exactly, and the p-th norm powers add over the disjoint supports.
LpVector mask(const LpVector& x, const IndexSet& m);

struct Atom {
  int label;
  double weight;  // strictly positive

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite positive measure space: unique labels, strictly positive weights.
class MeasureSpace {
 public:
  explicit MeasureSpace(std::vector<Atom> atoms);

  /// atom_count atoms labeled 1..n with geometrically decaying weights 2^-i,
  /// small enough to host the shrinking witness sets.
  static MeasureSpace geometric(int atom_count);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  double total_measure() const;

  friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

 private:
  std::vector<Atom> atoms_;
};

using MeasureSpacePtr = std::shared_ptr<const MeasureSpace>;

MeasureSpacePtr geometric_space(int atom_count);

/// Real function on a finite measure space, one value per atom. Models the
/// step functions of L_p over the discrete measure.
class StepFunction {
 public:
  StepFunction(MeasureSpacePtr space, std::vector<double> values);

  const MeasureSpacePtr& space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double value(std::size_t atom_pos) const { return values_.at(atom_pos); }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_zero() const;
  /// Pointwise nonnegative, i.e. membership in the positive cone.
  bool is_nonnegative() const;

  friend bool operator==(const StepFunction&, const StepFunction&);

 private:
  MeasureSpacePtr space_;
  std::vector<double> values_;
};

bool same_space(const StepFunction& f, const StepFunction& g);

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f);
StepFunction operator*(double scalar, const StepFunction& f);

/// (sum_i |f_i|^p mu_i)^(1/p), the L_p norm against the atom weights.
double norm(const StepFunction& f, double p);

}  // namespace lpproj
