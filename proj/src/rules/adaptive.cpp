#include "credrisk/rules/adaptive.hpp"

#include <algorithm>
#include <cctype>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool has_flag(const CustomerContext& ctx, const Transaction& txn, ContextFlag f) {
  return ctx.flags.contains(f) || txn.context.contains(f);
}

}  // namespace

CauseSet adaptive_causes(const std::set<int>& failed, const std::vector<AdaptiveRule>& rules) {
  CauseSet y;
  for (const auto& r : rules) {
    bool related = std::any_of(r.related_standard_rules.begin(), r.related_standard_rules.end(),
                               [&](int id) { return failed.contains(id); });
    if (related) y.push_back({r.id, r.cause, r.impact_coefficient, r.predicate});
  }
  std::sort(y.begin(), y.end(), [](const Cause& a, const Cause& b) { return a.id < b.id; });
  return y;
}

bool cause_holds(CausePredicate predicate, const CustomerContext& ctx, const Transaction& txn,
                 const RuleConfig& cfg) {
  switch (predicate) {
    case CausePredicate::air_ticket_purchase: {
      if (iequals(txn.category, "Airlines")) return true;
      if (has_flag(ctx, txn, ContextFlag::air_ticket_purchase)) return true;
      if (ctx.last_air_ticket) {
        int age = days_between(*ctx.last_air_ticket, txn.date);
        return age >= 0 && age <= cfg.lookback_days;
      }
      return false;
    }
    case CausePredicate::out_of_country: {
      if (has_flag(ctx, txn, ContextFlag::out_of_country)) return true;
      if (ctx.home_country.empty()) return false;
      if (txn.location && !txn.location->country.empty()) {
        return !iequals(txn.location->country, ctx.home_country);
      }
      if (ctx.last_known_location && !ctx.last_known_location->country.empty()) {
        return !iequals(ctx.last_known_location->country, ctx.home_country);
      }
      return false;
    }
    case CausePredicate::address_change:
      return has_flag(ctx, txn, ContextFlag::address_change);
    case CausePredicate::job_switch:
      return has_flag(ctx, txn, ContextFlag::job_switch);
    case CausePredicate::foreign_worker:
      return has_flag(ctx, txn, ContextFlag::foreign_worker);
  }
  return false;
}

CauseSet valid_causes(const CauseSet& y, const CustomerContext& ctx, const Transaction& txn,
                      const RuleConfig& cfg) {
  CauseSet x;
  for (const auto& c : y) {
    if (cause_holds(c.predicate, ctx, txn, cfg)) x.push_back(c);
  }
  return x;
}

double compute_r_online(const CauseSet& x, const CauseSet& y) {
  for (const auto& c : x) {
    bool member = std::any_of(y.begin(), y.end(), [&](const Cause& d) { return d.id == c.id; });
    if (!member) {
      throw Error(ErrorCode::invalid_argument,
                  "valid cause " + std::to_string(c.id) + " is not in the candidate set");
    }
  }
  if (y.empty()) return 100.0;
  double sum_x = 0;
  double sum_y = 0;
  for (const auto& c : x) sum_x += c.impact_coefficient;
  for (const auto& c : y) sum_y += c.impact_coefficient;
  double r = (1.0 - sum_x / sum_y) * 100.0;
  return std::clamp(r, 0.0, 100.0);
}

}  // namespace credrisk
