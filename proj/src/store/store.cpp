#include "credrisk/store/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "credrisk/error.hpp"

namespace credrisk {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kEventsFile = "events.jsonl";
constexpr std::string_view kAuditFile = "audit.jsonl";
constexpr std::string_view kManifestFile = "MANIFEST.json";

bool iequals(std::string_view a, std::string_view b) {
  return std::ranges::equal(a, b, [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
  });
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::storage, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string snapshot_name(std::uint64_t seq) {
  return "snapshot-" + std::to_string(seq) + ".json";
}

}  // namespace

std::unique_ptr<Store> Store::in_memory(Options opts) {
  return std::unique_ptr<Store>(new Store(opts));
}

std::unique_ptr<Store> Store::open(const fs::path& dir, Options opts) {
  std::unique_ptr<Store> s(new Store(opts));
  s->dir_ = dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::storage, "cannot create " + dir.string() + ": " + ec.message());
  s->load();
  s->events_ = AppendFile(dir / kEventsFile, opts.fsync);
  s->audit_ = AppendFile(dir / kAuditFile, opts.fsync);
  return s;
}

void Store::load() {
  if (fs::exists(dir_ / kManifestFile)) {
    json manifest;
    try {
      manifest = json::parse(read_file(dir_ / kManifestFile));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::storage, std::string("MANIFEST.json: ") + e.what());
    }
    auto snap = dir_ / manifest.at("snapshot").get<std::string>();
    try {
      state_ = store_state_from_json(json::parse(read_file(snap)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::storage, snap.filename().string() + ": " + e.what());
    }
    if (state_.seq != manifest.at("seq").get<std::uint64_t>()) {
      throw Error(ErrorCode::storage, "snapshot sequence does not match MANIFEST.json");
    }
  }

  auto log_path = dir_ / kEventsFile;
  if (!fs::exists(log_path)) return;
  std::string log = read_file(log_path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < log.size()) {
    auto nl = log.find('\n', pos);
    if (nl == std::string::npos) {
      // An unterminated tail was never acknowledged; drop it.
      std::clog << "warning: discarding torn record at end of " << log_path.string() << "\n";
      fs::resize_file(log_path, pos);
      break;
    }
    ++line_no;
    std::string_view line(log.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    json ev;
    try {
      ev = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::storage, "events.jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
    auto seq = ev.at("seq").get<std::uint64_t>();
    if (seq <= state_.seq) continue;  // covered by the snapshot
    if (seq != state_.seq + 1) {
      throw Error(ErrorCode::storage, "events.jsonl line " + std::to_string(line_no) +
                                          ": expected seq " + std::to_string(state_.seq + 1) +
                                          ", found " + std::to_string(seq));
    }
    apply(ev.at("type").get<std::string>(), ev.at("payload"));
  }
}

void Store::fault(std::string_view point) {
  if (hook_) hook_(point);
}

void Store::set_fault_hook(FaultHook hook) {
  std::lock_guard lock(mu_);
  hook_ = std::move(hook);
}

void Store::append_event(std::string_view type, const json& payload) {
  json ev = {{"type", type}, {"seq", state_.seq + 1}, {"payload", payload}};
  fault("append");
  if (persistent()) events_.append_line(ev.dump());
}

void Store::apply(std::string_view type, const json& payload) {
  try {
    if (type == "account_registered") {
      apply_registered(payload);
    } else if (type == "transaction_recorded") {
      apply_recorded(payload);
    } else if (type == "flag_resolved") {
      apply_resolved(payload);
    } else {
      throw Error(ErrorCode::storage, "unknown event type '" + std::string(type) + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::storage, std::string(type) + " event: " + e.what());
  }
  ++state_.seq;
}

void Store::apply_registered(const json& payload) {
  auto seed = account_seed_from_json(payload);
  AccountState acc;
  acc.account_id = seed.account_id;
  acc.risk = {seed.account_id, seed.r_offline, seed.source,
              payload.at("registered_at").get<std::string>()};
  acc.baseline_r_offline = seed.baseline.value_or(seed.r_offline);
  acc.context = seed.context;
  acc.stats.account_id = seed.account_id;
  for (const auto& [date, amount] : seed.history) {
    acc.stats = update_account_stats(std::move(acc.stats), date, amount);
  }
  state_.accounts.insert_or_assign(acc.account_id, std::move(acc));
}

void Store::apply_recorded(const json& payload) {
  auto a = assessment_from_json(payload);
  auto it = state_.accounts.find(a.account_id());
  if (it == state_.accounts.end()) {
    throw Error(ErrorCode::storage, "transaction for unregistered account " + a.account_id());
  }
  AccountState& acc = it->second;
  const Transaction& txn = a.transaction;

  acc.stats = update_account_stats(std::move(acc.stats), txn);

  // Life events persist on the customer; trip-level flags describe only
  // the transaction that carries them.
  for (auto f : txn.context) {
    if (f == ContextFlag::address_change || f == ContextFlag::job_switch ||
        f == ContextFlag::foreign_worker) {
      acc.context.flags.insert(f);
    }
  }
  if (iequals(txn.category, "Airlines") || txn.context.contains(ContextFlag::air_ticket_purchase)) {
    if (!acc.context.last_air_ticket || *acc.context.last_air_ticket < txn.date) {
      acc.context.last_air_ticket = txn.date;
    }
  }
  if (txn.location) acc.context.last_known_location = txn.location;

  if (a.outcome == Outcome::scored && a.triple) {
    acc.last_triple = a.triple;
    auto [m, inserted] = state_.medians.try_emplace(txn.category, opts_.median_window);
    m->second.add(*a.triple);
    if (a.r_offline_after) {
      acc.risk.r_offline = *a.r_offline_after;
      acc.risk.source = RiskSource::feedback;
      acc.risk.updated_at = a.timestamp;
    }
  }
  if (a.flagged) {
    if (!a.flag_id) throw Error(ErrorCode::storage, "flagged assessment without flag id");
    FlagItem item{*a.flag_id, a, FlagStatus::pending, "", ""};
    state_.flags.insert_or_assign(item.flag_id, std::move(item));
    state_.next_flag_id = std::max(state_.next_flag_id, *a.flag_id + 1);
    acc.status = AccountStatus::suspended;
  }
  acc.last_assessment = std::move(a);
}

void Store::apply_resolved(const json& payload) {
  auto id = payload.at("flag_id").get<std::uint64_t>();
  auto verdict = parse_verdict(payload.at("verdict").get<std::string>());
  auto it = state_.flags.find(id);
  if (it == state_.flags.end()) throw Error(ErrorCode::storage, "resolution of unknown flag");
  FlagItem& flag = it->second;
  flag.status = verdict == Verdict::confirmed_bad ? FlagStatus::confirmed_bad : FlagStatus::confirmed_good;
  flag.resolution_note = payload.at("note").get<std::string>();
  flag.resolved_at = payload.at("resolved_at").get<std::string>();

  auto acc_it = state_.accounts.find(flag.assessment.account_id());
  if (acc_it == state_.accounts.end()) return;
  AccountState& acc = acc_it->second;
  if (verdict == Verdict::confirmed_bad) {
    acc.status = AccountStatus::suspended;
    acc.risk.r_offline = std::max(acc.risk.r_offline, kConfirmedBadRisk);
  } else {
    acc.status = AccountStatus::active;
    acc.risk.r_offline = acc.baseline_r_offline;
  }
  acc.risk.source = RiskSource::manual;
  acc.risk.updated_at = flag.resolved_at;
}

AccountState Store::register_account(const AccountSeed& seed, std::string_view timestamp) {
  std::lock_guard lock(mu_);
  if (state_.accounts.contains(seed.account_id)) {
    throw Error(ErrorCode::conflict, "account " + seed.account_id + " already exists");
  }
  json payload = to_json(seed);
  payload["registered_at"] = timestamp;
  // Validates before anything is written.
  (void)account_seed_from_json(payload);
  append_event("account_registered", payload);
  apply("account_registered", payload);
  return state_.accounts.at(seed.account_id);
}

std::optional<AccountState> Store::account(std::string_view account_id) const {
  std::lock_guard lock(mu_);
  auto it = state_.accounts.find(std::string(account_id));
  if (it == state_.accounts.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Store::account_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  ids.reserve(state_.accounts.size());
  for (const auto& [id, a] : state_.accounts) ids.push_back(id);
  return ids;
}

std::optional<RiskTriple> Store::category_medians(std::string_view category) const {
  std::lock_guard lock(mu_);
  auto it = state_.medians.find(std::string(category));
  if (it == state_.medians.end()) return std::nullopt;
  return it->second.medians();
}

void Store::persist_assessment(RiskAssessment& a) {
  std::lock_guard lock(mu_);
  if (!state_.accounts.contains(a.account_id())) {
    throw Error(ErrorCode::not_found, "unknown account " + a.account_id());
  }
  a.flag_id = a.flagged ? std::optional(state_.next_flag_id) : std::nullopt;
  json payload = to_json(a);
  try {
    append_event("transaction_recorded", payload);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::storage) throw;
    std::clog << "warning: assessment for " << a.tid() << " not persisted: " << e.what() << "\n";
    a.flag_id.reset();
    a.persisted = false;
    return;
  }
  apply("transaction_recorded", payload);
  a.persisted = true;
  if (persistent()) {
    try {
      audit_.append_line(payload.dump());
    } catch (const Error& e) {
      // The event log is authoritative; the audit trail can be regenerated from it.
      std::clog << "warning: audit append failed for " << a.tid() << ": " << e.what() << "\n";
    }
  }
}

FlagItem Store::resolve_flag(std::uint64_t flag_id, Verdict verdict, std::string_view note,
                             std::string_view timestamp) {
  std::lock_guard lock(mu_);
  auto it = state_.flags.find(flag_id);
  if (it == state_.flags.end()) {
    throw Error(ErrorCode::not_found, "unknown flag " + std::to_string(flag_id));
  }
  if (it->second.status != FlagStatus::pending) {
    throw Error(ErrorCode::conflict, "flag " + std::to_string(flag_id) + " is already " +
                                         std::string(to_string(it->second.status)));
  }
  json payload = {{"flag_id", flag_id},
                  {"verdict", to_string(verdict)},
                  {"note", note},
                  {"resolved_at", timestamp}};
  append_event("flag_resolved", payload);
  apply("flag_resolved", payload);
  return state_.flags.at(flag_id);
}

std::vector<FlagItem> Store::list_flags(std::optional<FlagStatus> status) const {
  std::lock_guard lock(mu_);
  std::vector<FlagItem> out;
  for (auto it = state_.flags.rbegin(); it != state_.flags.rend(); ++it) {
    if (!status || it->second.status == *status) out.push_back(it->second);
  }
  return out;
}

StoreState Store::snapshot_state() const {
  std::lock_guard lock(mu_);
  return state_;
}

void Store::compact() {
  std::lock_guard lock(mu_);
  if (!persistent()) return;
  auto name = snapshot_name(state_.seq);
  write_file_atomic(dir_ / name, to_json(state_).dump(), opts_.fsync);
  fault("snapshot_written");
  json manifest = {{"snapshot", name}, {"seq", state_.seq}};
  write_file_atomic(dir_ / kManifestFile, manifest.dump(2), opts_.fsync);
  fault("manifest_written");
  events_.truncate();
  fault("log_truncated");
  for (const auto& entry : fs::directory_iterator(dir_)) {
    auto fname = entry.path().filename().string();
    if (fname.starts_with("snapshot-") && fname != name) {
      std::error_code ec;
      fs::remove(entry.path(), ec);
    }
  }
}

}  // namespace credrisk
