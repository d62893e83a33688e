#include "lpproj/lp_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lpproj {

double conjugate_exponent(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw std::invalid_argument("exponent must satisfy 1 < p < infinity");
  }
  return p / (p - 1.0);
}

namespace {

void normalize_entries(std::vector<Entry>& entries) {
  for (const Entry& e : entries) {
    if (e.index < 1) {
      throw std::invalid_argument("vector indices must be positive");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("vector values must be finite");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].index == entries[i - 1].index) {
      throw std::invalid_argument("duplicate vector index");
    }
  }
  std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
}

}  // namespace

LpVector::LpVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  normalize_entries(entries_);
}

LpVector::LpVector(std::initializer_list<Entry> entries)
    : LpVector(std::vector<Entry>(entries)) {}

LpVector LpVector::from_dense(std::span<const double> values) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) {
      entries.push_back({static_cast<int>(i) + 1, values[i]});
    }
  }
  return LpVector(std::move(entries));
}

double LpVector::operator[](int index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, int idx) { return e.index < idx; });
  if (it != entries_.end() && it->index == index) {
    return it->value;
  }
  return 0.0;
}

std::vector<double> LpVector::to_dense(int dimension) const {
  if (max_index() > dimension) {
    throw std::invalid_argument("requested dimension truncates the support");
  }
  std::vector<double> dense(static_cast<std::size_t>(dimension), 0.0);
  for (const Entry& e : entries_) {
    dense[static_cast<std::size_t>(e.index) - 1] = e.value;
  }
  return dense;
}

namespace {

// Merges two sorted supports; exact zeros produced by cancellation drop out.
template <typename Combine>
LpVector merge(const LpVector& x, const LpVector& y, Combine combine) {
  std::vector<Entry> out;
  out.reserve(x.entries().size() + y.entries().size());
  auto ix = x.entries().begin();
  auto iy = y.entries().begin();
  while (ix != x.entries().end() || iy != y.entries().end()) {
    int index;
    double a = 0.0;
    double b = 0.0;
    if (iy == y.entries().end() ||
        (ix != x.entries().end() && ix->index < iy->index)) {
      index = ix->index;
      a = ix->value;
      ++ix;
    } else if (ix == x.entries().end() || iy->index < ix->index) {
      index = iy->index;
      b = iy->value;
      ++iy;
    } else {
      index = ix->index;
      a = ix->value;
      b = iy->value;
      ++ix;
      ++iy;
    }
    const double v = combine(a, b);
    if (v != 0.0) {
      out.push_back({index, v});
    }
  }
  return LpVector(std::move(out));
}

}  // namespace

LpVector operator+(const LpVector& x, const LpVector& y) {
  return merge(x, y, [](double a, double b) { return a + b; });
}

LpVector operator-(const LpVector& x, const LpVector& y) {
  return merge(x, y, [](double a, double b) { return a - b; });
}

LpVector operator-(const LpVector& x) { return -1.0 * x; }

LpVector operator*(double scalar, const LpVector& x) {
  std::vector<Entry> out;
  out.reserve(x.entries().size());
  for (const Entry& e : x.entries()) {
    const double v = scalar * e.value;
    if (v != 0.0) {
      out.push_back({e.index, v});
    }
  }
  return LpVector(std::move(out));
}

double norm(const LpVector& x, double p) {
  Exponent exponent(p);
  double sum = 0.0;
  for (const Entry& e : x.entries()) {
    sum += std::pow(std::abs(e.value), exponent.p());
  }
  return std::pow(sum, 1.0 / exponent.p());
}

double distance(const LpVector& x, const LpVector& y, double p) {
  return norm(x - y, p);
}

IndexSet::IndexSet(std::vector<int> members, bool complemented)
    : members_(std::move(members)), complemented_(complemented) {}

IndexSet IndexSet::of(std::vector<int> members) {
  for (int m : members) {
    if (m < 1) {
      throw std::invalid_argument("index set members must be positive");
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return IndexSet(std::move(members), false);
}

IndexSet IndexSet::all() { return IndexSet({}, true); }

IndexSet IndexSet::complement() const {
  return IndexSet(members_, !complemented_);
}

bool IndexSet::contains(int index) const {
  const bool member =
      std::binary_search(members_.begin(), members_.end(), index);
  return member != complemented_;
}

LpVector mask(const LpVector& x, const IndexSet& m) {
  std::vector<Entry> out;
  for (const Entry& e : x.entries()) {
    if (m.contains(e.index)) {
      out.push_back(e);
    }
  }
  return LpVector(std::move(out));
}

MeasureSpace::MeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("measure space needs at least one atom");
  }
  std::vector<int> labels;
  labels.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("atom weights must be strictly positive");
    }
    labels.push_back(a.label);
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("atom labels must be unique");
  }
}

MeasureSpace MeasureSpace::geometric(int atom_count) {
  if (atom_count < 1 || atom_count > 62) {
    throw std::invalid_argument("geometric space size must be in [1, 62]");
  }
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(atom_count));
  for (int i = 1; i <= atom_count; ++i) {
    atoms.push_back({i, std::ldexp(1.0, -i)});
  }
  return MeasureSpace(std::move(atoms));
}

double MeasureSpace::total_measure() const {
  double sum = 0.0;
  for (const Atom& a : atoms_) {
    sum += a.weight;
  }
  return sum;
}

MeasureSpacePtr geometric_space(int atom_count) {
  return std::make_shared<const MeasureSpace>(MeasureSpace::geometric(atom_count));
}

StepFunction::StepFunction(MeasureSpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) {
    throw std::invalid_argument("step function needs a measure space");
  }
  if (values_.size() != space_->size()) {
    throw std::invalid_argument(
        "step function values must match the atom count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("step function values must be finite");
    }
  }
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

bool StepFunction::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

bool operator==(const StepFunction& f, const StepFunction& g) {
  return same_space(f, g) && f.values_ == g.values_;
}

bool same_space(const StepFunction& f, const StepFunction& g) {
  return f.space() == g.space() || *f.space() == *g.space();
}

namespace {

StepFunction zip(const StepFunction& f, const StepFunction& g,
                 double (*combine)(double, double)) {
  if (!same_space(f, g)) {
    throw std::invalid_argument("step functions live on different spaces");
  }
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    values[i] = combine(f.values()[i], g.values()[i]);
  }
  return StepFunction(f.space(), std::move(values));
}

}  // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return zip(f, g, [](double a, double b) { return a + b; });
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  return zip(f, g, [](double a, double b) { return a - b; });
}

StepFunction operator-(const StepFunction& f) { return -1.0 * f; }

StepFunction operator*(double scalar, const StepFunction& f) {
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    values[i] = scalar * f.values()[i];
  }
  return StepFunction(f.space(), std::move(values));
}

double norm(const StepFunction& f, double p) {
  Exponent exponent(p);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += std::pow(std::abs(f.values()[i]), exponent.p()) *
           f.space()->atoms()[i].weight;
  }
  return std::pow(sum, 1.0 / exponent.p());
}

}  // namespace lpproj
