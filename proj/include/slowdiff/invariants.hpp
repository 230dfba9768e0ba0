#pragma once

// End-to-end invariant battery behind the `check` subcommand. Each check is
// self-contained and reports one pass/fail line; tests reuse the same entry
// points with larger case counts.

#include <cstdint>
#include <string>
#include <vector>

#include "slowdiff/config.hpp"

namespace slowdiff {

struct InvariantResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<InvariantResult> run_all_invariants(const RunConfig& cfg);

}  // namespace slowdiff
