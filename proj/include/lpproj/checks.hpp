#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpproj {

struct PropertyResult {
  std::string name;
  int trials;
  int failures;
  double max_violation;

  bool passed() const noexcept { return failures == 0; }
};

struct CheckOptions {
  std::uint64_t seed = 0;
  /// Relative tolerance for the duality identities and linearity probes.
  double rel_tol = 1e-10;
  std::vector<double> p_values = {1.5, 2.0, 3.0, 4.0};
  /// Multiplies the per-property trial counts.
  int scale = 1;
};

/// Runs every module invariant as a randomized property batch and reports
/// trial counts, failure counts, and the worst observed violation.
std::vector<PropertyResult> run_property_checks(const CheckOptions& options);

}  // namespace lpproj
