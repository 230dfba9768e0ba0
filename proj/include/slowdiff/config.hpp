#pragma once

// Run configuration: JSON on disk, validated on load (first violated rule
// named), defaults filled and echoed back into the run manifest.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowdiff/diffeo.hpp"
#include "slowdiff/growth.hpp"
#include "slowdiff/psi.hpp"

namespace slowdiff {

struct RunConfig {
  MapConfig map;
  PsiSpec psi = PsiSpec::power(0.5);
  GridSpec grids;
  std::vector<std::int64_t> schedule = dyadic_schedule(131072);
  std::uint64_t seed = 0;
  std::string output = "out";

  // present when the map came from a resonant-pair block
  bool from_resonant = false;
  int resonant_depth = 0;
  int resonant_quotient = 2;
  std::string resonant_psi;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Full echo with defaults filled, numbers round-tripping exactly.
nlohmann::ordered_json config_echo(const RunConfig& cfg);

PsiSpec parse_psi(const nlohmann::json& j);
std::vector<std::int64_t> parse_schedule(const nlohmann::json& j);

}  // namespace slowdiff
