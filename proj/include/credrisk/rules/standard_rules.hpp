#pragma once

#include <optional>
#include <set>
#include <string>

#include "credrisk/ingest/transaction.hpp"
#include "credrisk/rules/rule_config.hpp"
#include "credrisk/store/account_stats.hpp"

namespace credrisk {

struct PaymentState {
  bool within_due_date = true;
  bool min_due_paid = true;
  Money paid_amount;
  Money due_amount;
  bool operator==(const PaymentState&) const = default;
};

// Customer-specific facts the adaptive causes are validated against.
struct CustomerContext {
  std::string home_country;
  std::set<ContextFlag> flags;
  std::optional<Location> last_known_location;
  PaymentState payment;
  std::optional<Date> last_air_ticket;

  bool operator==(const CustomerContext&) const = default;
};

struct StandardOutcome {
  std::set<int> relevant;
  std::set<int> failed;  // subset of relevant
  bool passed_screen = true;

  bool operator==(const StandardOutcome&) const = default;
};

// Great-circle distance on a 6371 km sphere.
double haversine_km(GeoPoint a, GeoPoint b);

// `stats` are the account statistics before `txn` is folded in. A rule with
// too little data (fewer than two prior samples, missing location) is
// satisfied. Unknown categories make every rule relevant, or throw
// Error(invalid_argument) when cfg.strict_categories is set.
StandardOutcome evaluate_standard(const Transaction& txn, const AccountStats& stats,
                                  const CustomerContext& ctx, const RuleConfig& cfg);

}  // namespace credrisk
