#pragma once

#include <set>
#include <string>
#include <vector>

#include "credrisk/rules/rule_config.hpp"
#include "credrisk/rules/standard_rules.hpp"

namespace credrisk {

struct Cause {
  int id = 0;
  std::string name;
  double impact_coefficient = 1;
  CausePredicate predicate = CausePredicate::address_change;

  bool operator==(const Cause&) const = default;
};

// Ordered by ascending id.
using CauseSet = std::vector<Cause>;

// Y: adaptive rules related to at least one failed standard rule.
CauseSet adaptive_causes(const std::set<int>& failed, const std::vector<AdaptiveRule>& rules);

// X: the members of Y whose predicate holds for this customer and transaction.
CauseSet valid_causes(const CauseSet& y, const CustomerContext& ctx, const Transaction& txn,
                      const RuleConfig& cfg);

bool cause_holds(CausePredicate predicate, const CustomerContext& ctx, const Transaction& txn,
                 const RuleConfig& cfg);

// Online risk in percent: (1 - sum coeff(X) / sum coeff(Y)) * 100, or 100
// when Y is empty. Throws Error(invalid_argument) if X is not a subset of Y.
double compute_r_online(const CauseSet& x, const CauseSet& y);

}  // namespace credrisk
