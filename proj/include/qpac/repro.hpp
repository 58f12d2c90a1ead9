#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qpac/result_table.hpp"

namespace qpac {

struct AssertionResult {
  std::string name;
  bool pass = false;
  std::string observed;
  std::string expected;
};

struct ReproReport {
  std::string scenario;
  std::string output_path;
  std::vector<AssertionResult> results;

  bool pass() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

nlohmann::json load_manifest(const std::string& path);
std::vector<std::string> scenario_names(const nlohmann::json& manifest);

// Evaluates manifest assertions against a table. Assertion kinds:
//   each         every row (optionally filtered by "where") satisfies
//                column <op> value, or column <op> other-column
//   monotone     column is non_increasing / non_decreasing /
//                strictly_increasing over the (filtered) rows
//   compare_rows column at key == a <op> column at key == b
// Ops: <, <=, >, >=, == (with optional "tol"), in [lo, hi], finite_positive.
std::vector<AssertionResult> check_assertions(const ResultTable& table,
                                              const nlohmann::json& assertions);

// Runs a scenario's config through the experiment runner, writes its CSV into
// out_dir and checks its assertions. Unknown scenarios throw ConfigError.
ReproReport run_repro(const nlohmann::json& manifest, const std::string& scenario,
                      const std::string& out_dir, std::size_t threads = 1);

}  // namespace qpac
