#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "credrisk/ingest/transaction.hpp"
#include "credrisk/rules/adaptive.hpp"
#include "credrisk/scoring/risk.hpp"

namespace credrisk {

enum class Outcome { passed_screen, scored };
std::string_view to_string(Outcome o);

// Result of running one transaction through the pipeline. A passed_screen
// assessment carries no triple and is never flagged.
struct RiskAssessment {
  Transaction transaction;
  Outcome outcome = Outcome::passed_screen;
  std::set<int> relevant_rules;
  std::set<int> failed_standard_rules;
  CauseSet y_causes;
  CauseSet x_causes;
  std::optional<RiskTriple> triple;
  // Presentation values: online and offline rounded to whole percent,
  // overall recombined from those and rounded to one decimal.
  std::optional<RiskTriple> display;
  std::optional<Deviation> gap;
  std::optional<Deviation> spike;
  bool flagged = false;
  std::vector<Reason> reasons;
  std::optional<double> r_offline_after;
  std::optional<std::uint64_t> flag_id;
  std::string timestamp;

  // Not serialised: false when the store could not make the record durable.
  bool persisted = true;

  const std::string& tid() const { return transaction.tid; }
  const std::string& account_id() const { return transaction.account_id; }

  bool operator==(const RiskAssessment&) const = default;
};

RiskTriple display_rounding(const RiskTriple& triple, double lambda);

nlohmann::json to_json(const RiskAssessment& a);
RiskAssessment assessment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RiskTriple& t);
RiskTriple risk_triple_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CauseSet& causes);
CauseSet cause_set_from_json(const nlohmann::json& j);

}  // namespace credrisk
