#pragma once

#include <string>
#include <vector>

#include "runconfig.hpp"

namespace ale::cli {

struct CheckRow {
  std::string name;
  Json measured;
  double tolerance = 0.0;
  bool pass = false;
};

struct GroupResult {
  std::string name;
  std::vector<CheckRow> rows;
};

const std::vector<std::string>& default_groups();

GroupResult run_group(const std::string& group, const RunConfig& cfg);

// consolidated report for the verify-all subcommand; exit_code receives
// 0 (all pass) or 1 (some check failed)
Json verify_all(const RunConfig& cfg, int* exit_code);

// worker count: config value bounded by ALE_NUM_THREADS when set
int worker_count(const RunConfig& cfg);

}  // namespace ale::cli
