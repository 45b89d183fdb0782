#include "credrisk/rules/rule_config.hpp"

#include <array>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<StandardRuleKind, std::string_view>, 6> kKinds{{
    {StandardRuleKind::amount_vs_mean_sigma, "amount_vs_mean_sigma"},
    {StandardRuleKind::daily_count_vs_mean_sigma, "daily_count_vs_mean_sigma"},
    {StandardRuleKind::payment_within_due, "payment_within_due"},
    {StandardRuleKind::minimum_due_paid, "minimum_due_paid"},
    {StandardRuleKind::paid_covers_due, "paid_covers_due"},
    {StandardRuleKind::location_proximity, "location_proximity"},
}};

constexpr std::array<std::pair<CausePredicate, std::string_view>, 5> kPredicates{{
    {CausePredicate::address_change, "address_change"},
    {CausePredicate::air_ticket_purchase, "air_ticket_purchase"},
    {CausePredicate::job_switch, "job_switch"},
    {CausePredicate::out_of_country, "out_of_country"},
    {CausePredicate::foreign_worker, "foreign_worker"},
}};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::config, what); }

}  // namespace

std::string_view to_string(StandardRuleKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "unknown";
}

StandardRuleKind parse_standard_rule_kind(std::string_view s) {
  for (const auto& [kind, name] : kKinds) {
    if (name == s) return kind;
  }
  config_error("unknown standard rule kind '" + std::string(s) + "'");
}

std::string_view to_string(CausePredicate p) {
  for (const auto& [pred, name] : kPredicates) {
    if (pred == p) return name;
  }
  return "unknown";
}

CausePredicate parse_cause_predicate(std::string_view s) {
  for (const auto& [pred, name] : kPredicates) {
    if (name == s) return pred;
  }
  config_error("unknown cause predicate '" + std::string(s) + "'");
}

RuleConfig RuleConfig::defaults() {
  using K = StandardRuleKind;
  using P = CausePredicate;
  RuleConfig cfg;
  cfg.standard_rules = {
      {1, K::amount_vs_mean_sigma, "Transaction amount <= mean + sigma of transaction amount", {}},
      {2, K::daily_count_vs_mean_sigma,
       "Number of transactions per day <= mean + sigma of daily transaction count", {}},
      {3, K::payment_within_due, "Payment within due date", {}},
      {4, K::minimum_due_paid, "Minimum amount due paid", {}},
      {5, K::paid_covers_due, "Paid amount greater than or equal to due amount", {}},
      {6, K::location_proximity, "Transaction location is near user's physical location", {}},
  };
  cfg.relevancy = {{"Airlines", {1, 2, 4, 6}}};
  cfg.adaptive_rules = {
      {1, "Address change", {6}, "1x", 1.0, P::address_change},
      {2, "Air ticket purchase", {1, 2}, "1x", 1.0, P::air_ticket_purchase},
      {3, "Job switch", {3}, "2x", 2.0, P::job_switch},
      {4, "Out of the country", {3, 4, 1, 6}, "2x", 2.0, P::out_of_country},
      {5, "Foreign Worker", {3}, "2x", 2.0, P::foreign_worker},
  };
  return cfg;
}

const StandardRule* RuleConfig::find_standard(int id) const {
  for (const auto& r : standard_rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::set<int> RuleConfig::standard_ids() const {
  std::set<int> ids;
  for (const auto& r : standard_rules) ids.insert(r.id);
  return ids;
}

void RuleConfig::validate() const {
  std::set<int> ids;
  for (const auto& r : standard_rules) {
    if (!ids.insert(r.id).second) config_error("duplicate standard rule id " + std::to_string(r.id));
    if (r.radius_km && !(*r.radius_km > 0)) {
      config_error("standard rule " + std::to_string(r.id) + ": radius_km must be > 0");
    }
  }
  for (const auto& [category, rule_ids] : relevancy) {
    for (int id : rule_ids) {
      if (!ids.contains(id)) {
        config_error("relevancy for '" + category + "' references unknown rule " +
                     std::to_string(id));
      }
    }
  }
  std::set<int> adaptive_ids;
  for (const auto& a : adaptive_rules) {
    if (!adaptive_ids.insert(a.id).second) {
      config_error("duplicate adaptive rule id " + std::to_string(a.id));
    }
    if (!(a.impact_coefficient > 0)) {
      config_error("adaptive rule " + std::to_string(a.id) + ": impact_coefficient must be > 0");
    }
    if (a.related_standard_rules.empty()) {
      config_error("adaptive rule " + std::to_string(a.id) + ": no related standard rules");
    }
    for (int id : a.related_standard_rules) {
      if (!ids.contains(id)) {
        config_error("adaptive rule " + std::to_string(a.id) + " references unknown rule " +
                     std::to_string(id));
      }
    }
  }
  if (!(lambda >= 0 && lambda <= 1)) config_error("lambda must be in [0, 1]");
  if (!(threshold_pct >= 0 && threshold_pct <= 100)) config_error("threshold_pct must be in [0, 100]");
  if (!(feedback_alpha >= 0 && feedback_alpha <= 1)) config_error("feedback_alpha must be in [0, 1]");
  if (!(proximity_km > 0)) config_error("proximity_km must be > 0");
  if (lookback_days < 0) config_error("lookback_days must be >= 0");
  if (median_window == 0) config_error("median_window must be >= 1");
}

RuleConfig rule_config_from_json(const json& doc) {
  RuleConfig cfg = RuleConfig::defaults();
  try {
    if (!doc.is_object()) config_error("rule config must be a JSON object");
    if (doc.contains("standard_rules")) {
      cfg.standard_rules.clear();
      for (const auto& r : doc.at("standard_rules")) {
        StandardRule rule;
        rule.id = r.at("id").get<int>();
        rule.kind = parse_standard_rule_kind(r.at("kind").get<std::string>());
        rule.description = r.value("description", "");
        if (auto p = r.find("params"); p != r.end() && p->contains("radius_km")) {
          rule.radius_km = p->at("radius_km").get<double>();
        }
        cfg.standard_rules.push_back(std::move(rule));
      }
    }
    if (doc.contains("relevancy")) {
      cfg.relevancy.clear();
      for (const auto& [category, ids] : doc.at("relevancy").items()) {
        cfg.relevancy[category] = ids.get<std::set<int>>();
      }
    }
    if (doc.contains("adaptive_rules")) {
      cfg.adaptive_rules.clear();
      for (const auto& r : doc.at("adaptive_rules")) {
        AdaptiveRule rule;
        rule.id = r.at("id").get<int>();
        rule.cause = r.at("cause").get<std::string>();
        rule.related_standard_rules = r.at("related").get<std::set<int>>();
        rule.impact_coefficient = r.at("coefficient").get<double>();
        rule.impact = r.value("impact", "");
        rule.predicate = parse_cause_predicate(r.at("predicate").get<std::string>());
        cfg.adaptive_rules.push_back(std::move(rule));
      }
    }
    cfg.lambda = doc.value("lambda", cfg.lambda);
    cfg.threshold_pct = doc.value("threshold_pct", cfg.threshold_pct);
    cfg.feedback_alpha = doc.value("feedback_alpha", cfg.feedback_alpha);
    cfg.proximity_km = doc.value("proximity_km", cfg.proximity_km);
    cfg.lookback_days = doc.value("lookback_days", cfg.lookback_days);
    cfg.median_window = doc.value("median_window", cfg.median_window);
    cfg.strict_categories = doc.value("strict_categories", cfg.strict_categories);
  } catch (const json::exception& e) {
    config_error(std::string("rule config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json to_json(const RuleConfig& cfg) {
  json standard = json::array();
  for (const auto& r : cfg.standard_rules) {
    json j = {{"id", r.id}, {"kind", std::string(to_string(r.kind))}, {"description", r.description}};
    j["params"] = json::object();
    if (r.radius_km) j["params"]["radius_km"] = *r.radius_km;
    standard.push_back(std::move(j));
  }
  json relevancy = json::object();
  for (const auto& [category, ids] : cfg.relevancy) relevancy[category] = ids;
  json adaptive = json::array();
  for (const auto& a : cfg.adaptive_rules) {
    adaptive.push_back({{"id", a.id},
                        {"cause", a.cause},
                        {"related", a.related_standard_rules},
                        {"impact", a.impact},
                        {"coefficient", a.impact_coefficient},
                        {"predicate", std::string(to_string(a.predicate))}});
  }
  return {{"standard_rules", std::move(standard)},
          {"relevancy", std::move(relevancy)},
          {"adaptive_rules", std::move(adaptive)},
          {"lambda", cfg.lambda},
          {"threshold_pct", cfg.threshold_pct},
          {"feedback_alpha", cfg.feedback_alpha},
          {"proximity_km", cfg.proximity_km},
          {"lookback_days", cfg.lookback_days},
          {"median_window", cfg.median_window},
          {"strict_categories", cfg.strict_categories}};
}

RuleConfig load_rule_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(std::string("rule config: ") + e.what());
  }
  return rule_config_from_json(doc);
}

}  // namespace credrisk
