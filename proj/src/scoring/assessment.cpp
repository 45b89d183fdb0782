#include "credrisk/scoring/assessment.hpp"

#include <cmath>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

using nlohmann::json;

json deviation_json(const Deviation& d) { return {{"x", d.x}, {"y", d.y}, {"z", d.z}}; }

Deviation deviation_from(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
}

}  // namespace

std::string_view to_string(Outcome o) {
  return o == Outcome::scored ? "scored" : "passed_screen";
}

RiskTriple display_rounding(const RiskTriple& t, double lambda) {
  double online = std::round(t.online);
  double offline = std::round(t.offline);
  double overall = std::round(combine_risk(online, offline, lambda) * 10.0) / 10.0;
  return {online, offline, overall};
}

json to_json(const RiskTriple& t) {
  return {{"online", t.online}, {"offline", t.offline}, {"overall", t.overall}};
}

RiskTriple risk_triple_from_json(const json& j) {
  return {j.at("online").get<double>(), j.at("offline").get<double>(),
          j.at("overall").get<double>()};
}

json to_json(const CauseSet& causes) {
  json arr = json::array();
  for (const auto& c : causes) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"coefficient", c.impact_coefficient},
                   {"predicate", std::string(to_string(c.predicate))}});
  }
  return arr;
}

CauseSet cause_set_from_json(const json& j) {
  CauseSet out;
  for (const auto& c : j) {
    out.push_back({c.at("id").get<int>(), c.at("name").get<std::string>(),
                   c.at("coefficient").get<double>(),
                   parse_cause_predicate(c.at("predicate").get<std::string>())});
  }
  return out;
}

json to_json(const RiskAssessment& a) {
  json reasons = json::array();
  for (const auto& r : a.reasons) {
    reasons.push_back({{"kind", std::string(to_string(r.kind))}, {"detail", r.detail}});
  }
  json j = {
      {"tid", a.tid()},
      {"account", a.account_id()},
      {"transaction", to_json(a.transaction)},
      {"outcome", std::string(to_string(a.outcome))},
      {"relevant_rules", a.relevant_rules},
      {"failed_standard_rules", a.failed_standard_rules},
      {"y_causes", to_json(a.y_causes)},
      {"x_causes", to_json(a.x_causes)},
      {"flagged", a.flagged},
      {"reasons", std::move(reasons)},
      {"timestamp", a.timestamp},
  };
  j["triple"] = a.triple ? to_json(*a.triple) : json(nullptr);
  j["display"] = a.display ? to_json(*a.display) : json(nullptr);
  j["gap"] = a.gap ? deviation_json(*a.gap) : json(nullptr);
  j["spike"] = a.spike ? deviation_json(*a.spike) : json(nullptr);
  j["r_offline_after"] = a.r_offline_after ? json(*a.r_offline_after) : json(nullptr);
  j["flag_id"] = a.flag_id ? json(*a.flag_id) : json(nullptr);
  return j;
}

RiskAssessment assessment_from_json(const json& j) {
  try {
    RiskAssessment a;
    a.transaction = transaction_from_json(j.at("transaction"));
    auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "scored") {
      a.outcome = Outcome::scored;
    } else if (outcome == "passed_screen") {
      a.outcome = Outcome::passed_screen;
    } else {
      throw Error(ErrorCode::parse, "unknown outcome '" + outcome + "'");
    }
    a.relevant_rules = j.at("relevant_rules").get<std::set<int>>();
    a.failed_standard_rules = j.at("failed_standard_rules").get<std::set<int>>();
    a.y_causes = cause_set_from_json(j.at("y_causes"));
    a.x_causes = cause_set_from_json(j.at("x_causes"));
    a.flagged = j.at("flagged").get<bool>();
    for (const auto& r : j.at("reasons")) {
      a.reasons.push_back({parse_reason_kind(r.at("kind").get<std::string>()),
                           r.at("detail").get<std::string>()});
    }
    a.timestamp = j.at("timestamp").get<std::string>();
    if (!j.at("triple").is_null()) a.triple = risk_triple_from_json(j.at("triple"));
    if (!j.at("display").is_null()) a.display = risk_triple_from_json(j.at("display"));
    if (!j.at("gap").is_null()) a.gap = deviation_from(j.at("gap"));
    if (!j.at("spike").is_null()) a.spike = deviation_from(j.at("spike"));
    if (!j.at("r_offline_after").is_null()) a.r_offline_after = j.at("r_offline_after").get<double>();
    if (!j.at("flag_id").is_null()) a.flag_id = j.at("flag_id").get<std::uint64_t>();
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("assessment: ") + e.what());
  }
}

}  // namespace credrisk
