#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hsol/soliton.hpp"

namespace hsol {

using ojson = nlohmann::ordered_json;

/// A validated problem file: the soliton equation, the grid, the tolerance.
///
/// File layout (JSON):
///   { "dimension": 2, "kind": "ricci", "lambda": -1, "rho": 0,
///     "field": {"family": "killing2d", "a": 1, "b": 2, "c": 3},
///     "G": "unit",
///     "grid": [{"min": -2, "max": 2, "count": 20}, {"min": 0.1, "max": 4, "count": 20}],
///     "tolerance": 1e-9 }
/// Field families: killing2d {a,b,c}, killing_nd {a[],b,c[]}, gradient {a,b[],c,e},
/// constant {v[]}, custom {components[]}. "potential" {a,b[],c,e} replaces
/// "field" for the gradient kind. G: "unit", {"type":"derived"} or
/// {"type":"custom","expr":"..."}. Unknown keys are rejected.
struct ProblemConfig {
  SolitonProblem problem;
  GridSpec grid;
  double tolerance = 1e-9;
};

inline constexpr double kDefaultTolerance = 1e-9;

ProblemConfig parse_problem_config(const nlohmann::json& doc);
ProblemConfig parse_problem_config_text(const std::string& text);
ProblemConfig load_problem_config(const std::string& path);

ojson problem_to_json(const SolitonProblem& prob);
ojson grid_to_json(const GridSpec& grid);
ojson problem_config_to_json(const ProblemConfig& cfg);

/// "x2=0.1:4:20" or "2=0.1:4:20" replaces one grid axis.
void apply_grid_override(ProblemConfig& cfg, const std::string& text);

ojson report_to_json(const ResidualReport& rep, const std::optional<std::string>& timestamp);

/// Pretty-printed JSON with every floating-point number at 17 significant digits.
std::string dump_json(const ojson& value, int indent = 2);

}  // namespace hsol
