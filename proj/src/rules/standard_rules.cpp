#include "credrisk/rules/standard_rules.hpp"

#include <cmath>
#include <numbers>

#include "credrisk/error.hpp"

namespace credrisk {

double haversine_km(GeoPoint a, GeoPoint b) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  double dlat = (b.lat - a.lat) * kRad;
  double dlon = (b.lon - a.lon) * kRad;
  double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) *
                 std::sin(dlon / 2);
  return 2 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

namespace {

bool violates(const StandardRule& rule, const Transaction& txn, const AccountStats& stats,
              const CustomerContext& ctx, const RuleConfig& cfg) {
  switch (rule.kind) {
    case StandardRuleKind::amount_vs_mean_sigma: {
      auto mean = stats.amount_mean();
      auto sigma = stats.amount_sigma();
      if (!mean || !sigma) return false;
      return txn.amount.as_double() > *mean + *sigma;
    }
    case StandardRuleKind::daily_count_vs_mean_sigma: {
      auto mean = stats.daily_count_mean();
      auto sigma = stats.daily_count_sigma();
      if (!mean || !sigma) return false;
      double today = static_cast<double>(stats.count_on(txn.date) + 1);
      return today > *mean + *sigma;
    }
    case StandardRuleKind::payment_within_due:
      return !ctx.payment.within_due_date;
    case StandardRuleKind::minimum_due_paid:
      return !ctx.payment.min_due_paid;
    case StandardRuleKind::paid_covers_due:
      return ctx.payment.paid_amount < ctx.payment.due_amount;
    case StandardRuleKind::location_proximity: {
      if (!txn.location || !ctx.last_known_location) return false;
      double radius = rule.radius_km.value_or(cfg.proximity_km);
      return haversine_km(txn.location->point, ctx.last_known_location->point) > radius;
    }
  }
  return false;
}

}  // namespace

StandardOutcome evaluate_standard(const Transaction& txn, const AccountStats& stats,
                                  const CustomerContext& ctx, const RuleConfig& cfg) {
  StandardOutcome out;
  if (auto it = cfg.relevancy.find(txn.category); it != cfg.relevancy.end()) {
    out.relevant = it->second;
  } else if (cfg.strict_categories) {
    throw Error(ErrorCode::invalid_argument, "unknown category '" + txn.category + "'");
  } else {
    out.relevant = cfg.standard_ids();
  }
  for (int id : out.relevant) {
    const auto* rule = cfg.find_standard(id);
    if (rule && violates(*rule, txn, stats, ctx, cfg)) out.failed.insert(id);
  }
  out.passed_screen = out.failed.empty();
  return out;
}

}  // namespace credrisk
