#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "credrisk/ml/model.hpp"
#include "credrisk/rules/rule_config.hpp"
#include "credrisk/scoring/assessment.hpp"
#include "credrisk/store/store.hpp"

namespace credrisk {

// Source of assessment and audit timestamps.
using Clock = std::function<std::string()>;

Clock wall_clock();
// Deterministic clock: `start` plus one second per call.
Clock logical_clock(std::chrono::sys_seconds start = std::chrono::sys_days{std::chrono::January / 1 / 2017});

// Builds a model instance from {attribute name: value}; nominal values are
// domain codes, numeric values numbers. Throws Error(invalid_argument)
// naming the offending attribute. The class column is left at 0.
Instance instance_from_profile(const Schema& schema, const nlohmann::json& profile);

// Orchestrates the scoring pipeline against a store. Scoring for one
// account is serialised; different accounts proceed concurrently.
class Engine {
 public:
  // `cfg` is validated here and fixed for the lifetime of the engine.
  Engine(RuleConfig cfg, Store& store, std::optional<ml::AnyModel> model = std::nullopt,
         Clock clock = wall_clock());

  // `auto_seed` registers the account first if it is unknown; without it
  // an unknown account is Error(not_found).
  RiskAssessment score(const Transaction& txn,
                       const std::optional<AccountSeed>& auto_seed = std::nullopt);

  AccountState register_account(const AccountSeed& seed);

  // Seed whose r_offline and baseline are the model's P(bad) for `profile`.
  // Throws Error(config) when no model is loaded.
  AccountSeed seed_from_profile(std::string account_id, const nlohmann::json& profile,
                                CustomerContext context = {}) const;

  FlagItem resolve_flag(std::uint64_t flag_id, Verdict verdict, std::string_view note);

  const RuleConfig& config() const { return cfg_; }
  Store& store() { return store_; }
  const Store& store() const { return store_; }
  const std::optional<ml::AnyModel>& model() const { return model_; }
  std::string now() const { return clock_(); }

 private:
  std::mutex& account_lock(const std::string& account_id);

  RuleConfig cfg_;
  Store& store_;
  std::optional<ml::AnyModel> model_;
  Clock clock_;
  std::mutex locks_mu_;
  std::unordered_map<std::string, std::unique_ptr<std::mutex>> locks_;
};

}  // namespace credrisk
