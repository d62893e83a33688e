#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lpproj/derivatives.hpp"

namespace lpproj {

using json = nlohmann::json;

// Vector encoding: {"p": 3.0, "entries": [[1, 1.0], [2, 2.0]]}. A bare
// entries array is accepted on input; p is optional and reported through
// p_out when present.
json vector_to_json(const LpVector& x, std::optional<double> p = {});
LpVector vector_from_json(const json& j, std::optional<double>* p_out = nullptr);

// Step function encoding:
// {"p": 3.0, "atoms": [[1, 0.5], [2, 0.25]], "values": [1.0, -2.0]}.
json step_function_to_json(const StepFunction& f, std::optional<double> p = {});
StepFunction step_function_from_json(const json& j,
                                     std::optional<double>* p_out = nullptr);

/// "h,max_ratio" CSV with 17 significant digits per value, one row per step.
std::string residual_csv(const ResidualTable& table);

json report_to_json(const LineNonlinearityReport& report);
json report_to_json(const SphereTwoSidedReport& report);
json report_to_json(const ConeInsideReport& report);
json report_to_json(const ConeOutsideReport& report);

}  // namespace lpproj
