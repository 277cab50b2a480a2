#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "entrolab/at.hpp"
#include "entrolab/endo.hpp"
#include "entrolab/entropy.hpp"

namespace entrolab {

using nlohmann::json;

// Command-line overrides applied on top of the scenario file values.
struct RunOverrides {
  std::optional<int> n_max, window;
  std::optional<uint64_t> product_budget, closure_budget, seed;
};

// Outcome of running one declarative scenario.
//   status: pass | violation | inconclusive | mismatch | error
// `report` is the mode-specific JSON object (the exact shape each subcommand
// writes); entropy scenarios additionally carry the CSV rendering.
struct ScenarioResult {
  std::string name;
  std::string mode;
  json report;
  std::string status;
  std::vector<std::string> mismatches;
  std::string csv;  // nonempty for entropy mode
  std::optional<std::string> out_path;  // scenario-declared output file
};

// Strict parsing: schema_version must be 1, unknown fields are rejected, and
// every element literal must parse in the declared family.
ScenarioResult run_scenario_json(const json& j, const RunOverrides& ov);
ScenarioResult run_scenario_file(const std::string& path,
                                 const RunOverrides& ov);

// Building blocks, exposed for tests and for the CLI.
Family parse_family(const json& j);
Elem parse_element(const Family& fam, const json& j);
json element_json(const Family& fam, const Elem& e);
EndoPtr parse_endo(const Family& fam, const json& j, uint64_t seed);
DescPtr parse_descriptor(const Family& fam, const json& j, uint64_t seed);

// CSV rendering of a trajectory table with the running growth analysis:
// columns n, size, log_size, prefix_inf, increment, stabilized_alpha.
std::string entropy_csv(const TrajectoryTable& table, int window);

// true when every leaf of `expect` equals the value at the same path of
// `actual`; objects match on the expected subset of keys, arrays must have
// equal length and match elementwise; mismatch paths are appended to `out`
bool json_matches(const json& expect, const json& actual,
                  const std::string& path, std::vector<std::string>& out);

}  // namespace entrolab
