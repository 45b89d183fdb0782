#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace credrisk {

enum class StandardRuleKind {
  amount_vs_mean_sigma,
  daily_count_vs_mean_sigma,
  payment_within_due,
  minimum_due_paid,
  paid_covers_due,
  location_proximity,
};

std::string_view to_string(StandardRuleKind k);
StandardRuleKind parse_standard_rule_kind(std::string_view s);

struct StandardRule {
  int id = 0;
  StandardRuleKind kind = StandardRuleKind::amount_vs_mean_sigma;
  std::string description;
  std::optional<double> radius_km;  // location_proximity; falls back to RuleConfig::proximity_km

  bool operator==(const StandardRule&) const = default;
};

// Which customer-context fact validates an adaptive cause.
enum class CausePredicate {
  address_change,
  air_ticket_purchase,
  job_switch,
  out_of_country,
  foreign_worker,
};

std::string_view to_string(CausePredicate p);
CausePredicate parse_cause_predicate(std::string_view s);

struct AdaptiveRule {
  int id = 0;
  std::string cause;
  std::set<int> related_standard_rules;
  std::string impact;             // display tier, e.g. "2x"
  double impact_coefficient = 1;  // weight used by the online risk formula
  CausePredicate predicate = CausePredicate::address_change;

  bool operator==(const AdaptiveRule&) const = default;
};

// Transaction category -> relevant standard rule ids.
using RelevancyMap = std::map<std::string, std::set<int>>;

struct RuleConfig {
  std::vector<StandardRule> standard_rules;
  RelevancyMap relevancy;
  std::vector<AdaptiveRule> adaptive_rules;
  double lambda = 0.7;
  double threshold_pct = 60.0;
  double feedback_alpha = 0.2;
  double proximity_km = 100.0;
  int lookback_days = 30;
  std::size_t median_window = 500;
  // Unknown categories are an error instead of "all rules relevant".
  bool strict_categories = false;

  // Standard rules, Airlines relevancy row and adaptive rules of the
  // reference setup; lambda 0.7, threshold 60%.
  static RuleConfig defaults();

  const StandardRule* find_standard(int id) const;
  std::set<int> standard_ids() const;

  // Throws Error(config) describing the first violated constraint.
  void validate() const;

  bool operator==(const RuleConfig&) const = default;
};

// Keys absent from the document keep their default value.
RuleConfig rule_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RuleConfig& cfg);
RuleConfig load_rule_config(std::istream& in);

}  // namespace credrisk
