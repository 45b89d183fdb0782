#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "credrisk/ingest/risk_record.hpp"
#include "credrisk/rules/standard_rules.hpp"
#include "credrisk/scoring/assessment.hpp"
#include "credrisk/store/account_stats.hpp"
#include "credrisk/store/category_medians.hpp"

namespace credrisk {

enum class AccountStatus { active, suspended };
enum class FlagStatus { pending, confirmed_bad, confirmed_good };
enum class Verdict { confirmed_bad, confirmed_good };

std::string_view to_string(AccountStatus s);
std::string_view to_string(FlagStatus s);
std::string_view to_string(Verdict v);
AccountStatus parse_account_status(std::string_view s);
FlagStatus parse_flag_status(std::string_view s);
Verdict parse_verdict(std::string_view s);

inline constexpr double kConfirmedBadRisk = 95.0;

struct AccountState {
  std::string account_id;
  OfflineRiskRecord risk;
  double baseline_r_offline = 0;  // classifier prediction, restored on confirmed_good
  AccountStatus status = AccountStatus::active;
  CustomerContext context;
  AccountStats stats;
  std::optional<RiskTriple> last_triple;  // previous scored transaction
  std::optional<RiskAssessment> last_assessment;

  bool operator==(const AccountState&) const = default;
};

struct FlagItem {
  std::uint64_t flag_id = 0;
  RiskAssessment assessment;
  FlagStatus status = FlagStatus::pending;
  std::string resolution_note;
  std::string resolved_at;

  bool operator==(const FlagItem&) const = default;
};

// Initial account registration. `history` is folded into the statistics
// without being scored.
struct AccountSeed {
  std::string account_id;
  double r_offline = 0;
  std::optional<double> baseline;  // defaults to r_offline
  RiskSource source = RiskSource::model;
  CustomerContext context;
  std::vector<std::pair<Date, Money>> history;
};

struct StoreState {
  std::map<std::string, AccountState> accounts;
  std::map<std::string, CategoryMedians> medians;
  std::map<std::uint64_t, FlagItem> flags;
  std::uint64_t next_flag_id = 1;
  std::uint64_t seq = 0;  // last applied event

  bool operator==(const StoreState&) const = default;
};

nlohmann::json to_json(const StoreState& s);
StoreState store_state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AccountState& a);
AccountState account_state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FlagItem& f);
FlagItem flag_item_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CustomerContext& c);
CustomerContext customer_context_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AccountSeed& s);
AccountSeed account_seed_from_json(const nlohmann::json& j);

}  // namespace credrisk
