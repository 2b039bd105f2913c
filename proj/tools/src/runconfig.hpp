#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json_util.hpp"

namespace ale::cli {

/// Batch run configuration.  Strictly parsed: unknown fields and
/// non-positive tolerances are rejected with a ParseError.
struct RunConfig {
  std::optional<double> tol;          // overrides per-check thresholds
  std::uint64_t seed = 0;
  std::string out;                    // empty -> stdout
  std::vector<std::string> only;      // subset of {picard, aklines, nodal, metrics}
  int threads = 1;
  int nodal_ell = 3;                  // highest l exercised by the nodal group

  Json echo() const;  // defaults filled in, for the report
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_json(const Json& j);

}  // namespace ale::cli
