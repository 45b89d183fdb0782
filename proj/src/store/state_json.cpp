#include "credrisk/store/state.hpp"

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

using nlohmann::json;

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json location_json(const Location& l) {
  return {{"lat", l.point.lat}, {"lon", l.point.lon}, {"country", l.country}};
}

Location location_from(const json& j) {
  return {{j.at("lat").get<double>(), j.at("lon").get<double>()},
          j.at("country").get<std::string>()};
}

json running_json(const RunningStat& s) {
  return {{"n", s.count()}, {"mean", s.mean()}, {"m2", s.m2()}};
}

RunningStat running_from(const json& j) {
  return RunningStat::restore(j.at("n").get<std::uint64_t>(), j.at("mean").get<double>(),
                              j.at("m2").get<double>());
}

json stats_json(const AccountStats& s) {
  return {{"amount", running_json(s.amount)},
          {"daily_count", running_json(s.daily_count)},
          {"current_day", s.current_day ? json(format_date(*s.current_day)) : json(nullptr)},
          {"current_day_count", s.current_day_count},
          {"last_txn_date", s.last_txn_date ? json(format_date(*s.last_txn_date)) : json(nullptr)}};
}

AccountStats stats_from(const json& j, const std::string& id) {
  AccountStats s;
  s.account_id = id;
  s.amount = running_from(j.at("amount"));
  s.daily_count = running_from(j.at("daily_count"));
  if (!j.at("current_day").is_null()) s.current_day = parse_date(j.at("current_day").get<std::string>());
  s.current_day_count = j.at("current_day_count").get<std::uint64_t>();
  if (!j.at("last_txn_date").is_null()) {
    s.last_txn_date = parse_date(j.at("last_txn_date").get<std::string>());
  }
  return s;
}

json medians_json(const CategoryMedians& m) {
  json window = json::array();
  for (const auto& t : m.window()) window.push_back(json::array({t.online, t.offline, t.overall}));
  return {{"capacity", m.capacity()}, {"window", std::move(window)}};
}

CategoryMedians medians_from(const json& j) {
  CategoryMedians m(j.at("capacity").get<std::size_t>());
  for (const auto& t : j.at("window")) {
    m.add({t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()});
  }
  return m;
}

}  // namespace

std::string_view to_string(AccountStatus s) {
  return s == AccountStatus::active ? "active" : "suspended";
}

std::string_view to_string(FlagStatus s) {
  switch (s) {
    case FlagStatus::pending: return "pending";
    case FlagStatus::confirmed_bad: return "confirmed_bad";
    case FlagStatus::confirmed_good: return "confirmed_good";
  }
  return "pending";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::confirmed_bad ? "confirmed_bad" : "confirmed_good";
}

AccountStatus parse_account_status(std::string_view s) {
  if (s == "active") return AccountStatus::active;
  if (s == "suspended") return AccountStatus::suspended;
  throw Error(ErrorCode::parse, "unknown account status '" + std::string(s) + "'");
}

FlagStatus parse_flag_status(std::string_view s) {
  if (s == "pending") return FlagStatus::pending;
  if (s == "confirmed_bad") return FlagStatus::confirmed_bad;
  if (s == "confirmed_good") return FlagStatus::confirmed_good;
  throw Error(ErrorCode::invalid_argument, "unknown flag status '" + std::string(s) + "'");
}

Verdict parse_verdict(std::string_view s) {
  if (s == "confirmed_bad") return Verdict::confirmed_bad;
  if (s == "confirmed_good") return Verdict::confirmed_good;
  throw Error(ErrorCode::invalid_argument, "unknown verdict '" + std::string(s) + "'");
}

json to_json(const CustomerContext& c) {
  json flags = json::array();
  for (auto f : c.flags) flags.push_back(std::string(to_string(f)));
  return {
      {"home_country", c.home_country},
      {"flags", std::move(flags)},
      {"last_known_location",
       c.last_known_location ? location_json(*c.last_known_location) : json(nullptr)},
      {"payment",
       {{"within_due_date", c.payment.within_due_date},
        {"min_due_paid", c.payment.min_due_paid},
        {"paid_amount", format_money(c.payment.paid_amount)},
        {"due_amount", format_money(c.payment.due_amount)}}},
      {"last_air_ticket", c.last_air_ticket ? json(format_date(*c.last_air_ticket)) : json(nullptr)},
  };
}

CustomerContext customer_context_from_json(const json& j) {
  CustomerContext c;
  c.home_country = j.value("home_country", "");
  if (auto it = j.find("flags"); it != j.end()) {
    for (const auto& f : *it) c.flags.insert(parse_context_flag(f.get<std::string>()));
  }
  if (auto it = j.find("last_known_location"); it != j.end() && !it->is_null()) {
    c.last_known_location = location_from(*it);
  }
  if (auto it = j.find("payment"); it != j.end() && !it->is_null()) {
    c.payment.within_due_date = it->value("within_due_date", true);
    c.payment.min_due_paid = it->value("min_due_paid", true);
    c.payment.paid_amount = parse_money(it->value("paid_amount", "0"));
    c.payment.due_amount = parse_money(it->value("due_amount", "0"));
  }
  if (auto it = j.find("last_air_ticket"); it != j.end() && !it->is_null()) {
    c.last_air_ticket = parse_date(it->get<std::string>());
  }
  return c;
}

json to_json(const AccountState& a) {
  return {
      {"account_id", a.account_id},
      {"r_offline", a.risk.r_offline},
      {"source", std::string(to_string(a.risk.source))},
      {"updated_at", a.risk.updated_at},
      {"baseline_r_offline", a.baseline_r_offline},
      {"status", std::string(to_string(a.status))},
      {"context", to_json(a.context)},
      {"stats", stats_json(a.stats)},
      {"last_triple", a.last_triple ? to_json(*a.last_triple) : json(nullptr)},
      {"last_assessment", a.last_assessment ? to_json(*a.last_assessment) : json(nullptr)},
  };
}

AccountState account_state_from_json(const json& j) {
  AccountState a;
  a.account_id = j.at("account_id").get<std::string>();
  a.risk = {a.account_id, j.at("r_offline").get<double>(),
            parse_risk_source(j.at("source").get<std::string>()),
            j.at("updated_at").get<std::string>()};
  a.baseline_r_offline = j.at("baseline_r_offline").get<double>();
  a.status = parse_account_status(j.at("status").get<std::string>());
  a.context = customer_context_from_json(j.at("context"));
  a.stats = stats_from(j.at("stats"), a.account_id);
  if (!j.at("last_triple").is_null()) a.last_triple = risk_triple_from_json(j.at("last_triple"));
  if (!j.at("last_assessment").is_null()) {
    a.last_assessment = assessment_from_json(j.at("last_assessment"));
  }
  return a;
}

json to_json(const FlagItem& f) {
  return {{"flag_id", f.flag_id},
          {"assessment", to_json(f.assessment)},
          {"status", std::string(to_string(f.status))},
          {"resolution_note", f.resolution_note},
          {"resolved_at", f.resolved_at}};
}

FlagItem flag_item_from_json(const json& j) {
  return {j.at("flag_id").get<std::uint64_t>(), assessment_from_json(j.at("assessment")),
          parse_flag_status(j.at("status").get<std::string>()),
          j.at("resolution_note").get<std::string>(), j.at("resolved_at").get<std::string>()};
}

json to_json(const AccountSeed& s) {
  json history = json::array();
  for (const auto& [date, amount] : s.history) {
    history.push_back({{"date", format_date(date)}, {"amount", format_money(amount)}});
  }
  return {{"account", s.account_id},
          {"r_offline", s.r_offline},
          {"baseline", opt(s.baseline)},
          {"source", std::string(to_string(s.source))},
          {"context", to_json(s.context)},
          {"history", std::move(history)}};
}

AccountSeed account_seed_from_json(const json& j) {
  try {
    AccountSeed s;
    s.account_id = j.at("account").get<std::string>();
    if (s.account_id.empty()) throw Error(ErrorCode::invalid_argument, "account id is empty");
    s.r_offline = j.at("r_offline").get<double>();
    if (!(s.r_offline >= 0 && s.r_offline <= 100)) {
      throw Error(ErrorCode::invalid_argument, "r_offline must be in [0, 100]");
    }
    if (auto it = j.find("baseline"); it != j.end() && !it->is_null()) {
      s.baseline = it->get<double>();
      if (!(*s.baseline >= 0 && *s.baseline <= 100)) {
        throw Error(ErrorCode::invalid_argument, "baseline must be in [0, 100]");
      }
    }
    s.source = parse_risk_source(j.value("source", "model"));
    if (auto it = j.find("context"); it != j.end() && !it->is_null()) {
      s.context = customer_context_from_json(*it);
    }
    if (auto it = j.find("history"); it != j.end()) {
      for (const auto& h : *it) {
        s.history.emplace_back(parse_date(h.at("date").get<std::string>()),
                               parse_money(h.at("amount").get<std::string>()));
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("account seed: ") + e.what());
  }
}

json to_json(const StoreState& s) {
  json accounts = json::array();
  for (const auto& [id, a] : s.accounts) accounts.push_back(to_json(a));
  json medians = json::object();
  for (const auto& [category, m] : s.medians) medians[category] = medians_json(m);
  json flags = json::array();
  for (const auto& [id, f] : s.flags) flags.push_back(to_json(f));
  return {{"seq", s.seq},
          {"next_flag_id", s.next_flag_id},
          {"accounts", std::move(accounts)},
          {"medians", std::move(medians)},
          {"flags", std::move(flags)}};
}

StoreState store_state_from_json(const json& j) {
  try {
    StoreState s;
    s.seq = j.at("seq").get<std::uint64_t>();
    s.next_flag_id = j.at("next_flag_id").get<std::uint64_t>();
    for (const auto& a : j.at("accounts")) {
      auto acc = account_state_from_json(a);
      s.accounts.emplace(acc.account_id, std::move(acc));
    }
    for (const auto& [category, m] : j.at("medians").items()) {
      s.medians.emplace(category, medians_from(m));
    }
    for (const auto& f : j.at("flags")) {
      auto item = flag_item_from_json(f);
      s.flags.emplace(item.flag_id, std::move(item));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::storage, std::string("snapshot: ") + e.what());
  }
}

}  // namespace credrisk
