#pragma once

// Scenario files (TOML). Schema:
//   name = "..."
//   [manifold]  type = "punctured_torus" | "disk", puncture = [c1, c2, r], radius = R
//   [torus]     m = 1, xi_max = 8
//   [[forms]]   lambda = ["1/2", "0"], v = "expr"          (one per torus slot)
//   [[rhs]]     xi = [..], dt1 = "re" | ["re", "im"], dt2 = ...
//   [[manufactured]] xi = [..], v = "re" | ["re", "im"]
//   [manufactured_family] range = [lo, hi], decay = a, v = ...  (v exp(-a |xi|) for lo <= |xi| <= hi)
//   [solver]    tol, grid, basepoint = [t1, t2]
//   [diophantine] radius, depth, precision_bits
//   [counterexample] kind = "rational" | "liouville", terms, direction = [..]
//   [output]    directory, format = "csv" | "json"
// Unknown keys and malformed values raise SchemaError with the line number.

#include <optional>
#include <string>
#include <string_view>

#include "ghlab/solver.hpp"

namespace ghlab {

struct CounterexampleConfig {
  std::string kind;  // empty: follow the classification
  std::size_t terms = 32;
  std::optional<Frequency> direction;
};

struct OutputConfig {
  std::string directory = "report";
  std::string format = "csv";
};

struct ScenarioFile {
  std::string path;
  Scenario scenario;
  ClassifyPolicy classify;
  CounterexampleConfig counterexample;
  OutputConfig output;
};

ScenarioFile parse_scenario(std::string_view text, const std::string& path = "<string>");
ScenarioFile load_scenario(const std::string& path);

}  // namespace ghlab
