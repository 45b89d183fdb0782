#include "credrisk/service/engine.hpp"

#include "credrisk/error.hpp"
#include "credrisk/ml/offline_risk.hpp"
#include "credrisk/rules/adaptive.hpp"
#include "credrisk/rules/standard_rules.hpp"

namespace credrisk {

Clock wall_clock() {
  return [] { return format_timestamp(std::chrono::system_clock::now()); };
}

Clock logical_clock(std::chrono::sys_seconds start) {
  auto ticks = std::make_shared<std::atomic<std::int64_t>>(0);
  return [start, ticks] {
    auto n = ticks->fetch_add(1);
    return format_timestamp(start + std::chrono::seconds(n));
  };
}

Instance instance_from_profile(const Schema& schema, const nlohmann::json& profile) {
  if (!profile.is_object()) throw Error(ErrorCode::invalid_argument, "profile must be an object");
  Instance x(schema.attributes.size(), 0.0);
  for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
    if (i == schema.class_index) continue;
    const auto& attr = schema.attributes[i];
    auto it = profile.find(attr.name);
    if (it == profile.end()) {
      throw Error(ErrorCode::invalid_argument, "profile: missing attribute '" + attr.name + "'");
    }
    if (attr.is_nominal()) {
      if (!it->is_string()) {
        throw Error(ErrorCode::invalid_argument, "profile: attribute '" + attr.name + "' must be a code string");
      }
      auto idx = attr.index_of(it->get<std::string>());
      if (!idx) {
        throw Error(ErrorCode::invalid_argument, "profile: attribute '" + attr.name +
                                                     "': unknown value '" + it->get<std::string>() + "'");
      }
      x[i] = static_cast<double>(*idx);
    } else {
      if (!it->is_number()) {
        throw Error(ErrorCode::invalid_argument, "profile: attribute '" + attr.name + "' must be numeric");
      }
      x[i] = it->get<double>();
    }
  }
  return x;
}

Engine::Engine(RuleConfig cfg, Store& store, std::optional<ml::AnyModel> model, Clock clock)
    : cfg_(std::move(cfg)), store_(store), model_(std::move(model)), clock_(std::move(clock)) {
  cfg_.validate();
}

std::mutex& Engine::account_lock(const std::string& account_id) {
  std::lock_guard lock(locks_mu_);
  auto& slot = locks_[account_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

AccountState Engine::register_account(const AccountSeed& seed) {
  std::lock_guard lock(account_lock(seed.account_id));
  return store_.register_account(seed, clock_());
}

AccountSeed Engine::seed_from_profile(std::string account_id, const nlohmann::json& profile,
                                      CustomerContext context) const {
  if (!model_) throw Error(ErrorCode::config, "no model loaded; cannot score an account profile");
  auto x = instance_from_profile(ml::schema_of(*model_), profile);
  double r = ml::risk_percent(ml::predict_proba(*model_, x));
  AccountSeed seed;
  seed.account_id = std::move(account_id);
  seed.r_offline = r;
  seed.baseline = r;
  seed.source = RiskSource::model;
  seed.context = std::move(context);
  return seed;
}

RiskAssessment Engine::score(const Transaction& txn, const std::optional<AccountSeed>& auto_seed) {
  if (txn.tid.empty()) throw Error(ErrorCode::invalid_argument, "field 'tid': must not be empty");
  if (txn.account_id.empty()) {
    throw Error(ErrorCode::invalid_argument, "field 'account': must not be empty");
  }
  std::lock_guard lock(account_lock(txn.account_id));

  auto acc = store_.account(txn.account_id);
  if (!acc) {
    if (!auto_seed) throw Error(ErrorCode::not_found, "unknown account " + txn.account_id);
    if (auto_seed->account_id != txn.account_id) {
      throw Error(ErrorCode::invalid_argument, "profile account does not match transaction account");
    }
    acc = store_.register_account(*auto_seed, clock_());
  }

  RiskAssessment a;
  a.transaction = txn;
  a.timestamp = clock_();

  auto screen = evaluate_standard(txn, acc->stats, acc->context, cfg_);
  a.relevant_rules = screen.relevant;
  a.failed_standard_rules = screen.failed;
  if (screen.passed_screen) {
    a.outcome = Outcome::passed_screen;
    store_.persist_assessment(a);
    return a;
  }

  a.outcome = Outcome::scored;
  a.y_causes = adaptive_causes(screen.failed, cfg_.adaptive_rules);
  a.x_causes = valid_causes(a.y_causes, acc->context, txn, cfg_);
  double online = compute_r_online(a.x_causes, a.y_causes);
  double offline = acc->risk.r_offline;
  RiskTriple triple{online, offline, combine_risk(online, offline, cfg_.lambda)};
  a.triple = triple;
  a.display = display_rounding(triple, cfg_.lambda);
  a.gap = compute_gap(triple, store_.category_medians(txn.category));
  a.spike = compute_spike(triple, acc->last_triple);
  auto decision = decide(triple, a.gap, a.spike, cfg_.threshold_pct);
  a.flagged = decision.flagged;
  a.reasons = std::move(decision.reasons);
  a.r_offline_after = feedback_offline(offline, triple.overall, cfg_.feedback_alpha);
  store_.persist_assessment(a);
  return a;
}

FlagItem Engine::resolve_flag(std::uint64_t flag_id, Verdict verdict, std::string_view note) {
  return store_.resolve_flag(flag_id, verdict, note, clock_());
}

}  // namespace credrisk
