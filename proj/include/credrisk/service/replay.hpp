#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "credrisk/service/engine.hpp"

namespace credrisk {

struct ReplayReport {
  std::size_t processed = 0;  // passed_screen + scored
  std::size_t passed_screen = 0;
  std::size_t scored = 0;
  std::size_t flagged = 0;
  std::size_t rejected = 0;     // malformed line or unknown account
  std::size_t unpersisted = 0;  // scored but not durable
  std::map<std::string, std::size_t> reasons;
  std::vector<std::string> errors;  // "line N: message", lenient mode
  double wall_time_s = 0;

  bool operator==(const ReplayReport&) const = default;
};

struct ReplayOptions {
  bool strict = false;  // first bad line aborts with Error(parse)
};

// Scores each non-blank line of `lines` in order. `sink` sees every
// assessment as it is produced.
ReplayReport run_replay(Engine& engine, std::istream& lines, const ReplayOptions& opts = {},
                        const std::function<void(const RiskAssessment&)>& sink = {});

// Wall time is left out unless requested so reports of identical runs compare equal.
nlohmann::json to_json(const ReplayReport& r, bool include_timing = false);

}  // namespace credrisk
