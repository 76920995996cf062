#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace skinspec::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Runs one acceptance criterion (1..10). Exceptions and budget overruns are
/// reported as failures, never propagated.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// All criteria in order; each result is streamed to `progress` as a line
/// when given.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress = nullptr);

/// "PASS [3] winding method agreement (0.41 s): ..." style line.
std::string format_line(const CriterionResult& result);

nlohmann::json results_to_json(const std::vector<CriterionResult>& results);

}  // namespace skinspec::cli
