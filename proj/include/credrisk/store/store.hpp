#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "credrisk/store/append_file.hpp"
#include "credrisk/store/state.hpp"

namespace credrisk {

// Account, median and flag state with an append-only event log.
//
// Directory layout:
//   events.jsonl     {"type","seq","payload"} per line; replayed on open
//   audit.jsonl      one assessment per line, never compacted
//   MANIFEST.json    {"snapshot": file name, "seq": covered sequence}
//   snapshot-N.json  full StoreState after event N
//
// Every mutation is appended to the log before it is applied, so a
// reopened store rebuilds the exact state that was acknowledged.
class Store {
 public:
  struct Options {
    std::size_t median_window = 500;
    bool fsync = false;
  };

  // Called at named points ("append", "snapshot_written", "manifest_written",
  // "log_truncated"); a throwing hook simulates a crash there.
  using FaultHook = std::function<void(std::string_view point)>;

  static std::unique_ptr<Store> in_memory(Options opts);
  static std::unique_ptr<Store> in_memory() { return in_memory(Options{}); }
  // Creates the directory if needed and rebuilds from snapshot + log.
  static std::unique_ptr<Store> open(const std::filesystem::path& dir, Options opts);
  static std::unique_ptr<Store> open(const std::filesystem::path& dir) {
    return open(dir, Options{});
  }

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  // Throws Error(conflict) if the account exists.
  AccountState register_account(const AccountSeed& seed, std::string_view timestamp);

  std::optional<AccountState> account(std::string_view account_id) const;
  std::vector<std::string> account_ids() const;
  std::optional<RiskTriple> category_medians(std::string_view category) const;

  // Records the assessment: statistics, context, medians, r_offline
  // feedback and, when flagged, a pending flag (whose id is written into
  // `a`). On storage failure nothing is applied and a.persisted is false.
  void persist_assessment(RiskAssessment& a);

  // Throws Error(not_found) for an unknown flag, Error(conflict) if it was
  // already resolved.
  FlagItem resolve_flag(std::uint64_t flag_id, Verdict verdict, std::string_view note,
                        std::string_view timestamp);

  // Newest first.
  std::vector<FlagItem> list_flags(std::optional<FlagStatus> status = std::nullopt) const;

  StoreState snapshot_state() const;

  // Writes a snapshot of the current state and empties the event log.
  void compact();

  void set_fault_hook(FaultHook hook);

  bool persistent() const { return !dir_.empty(); }
  const std::filesystem::path& directory() const { return dir_; }
  std::size_t median_window() const { return opts_.median_window; }

 private:
  explicit Store(Options opts) : opts_(opts) {}

  void load();
  void append_event(std::string_view type, const nlohmann::json& payload);
  void apply(std::string_view type, const nlohmann::json& payload);
  void fault(std::string_view point);

  void apply_registered(const nlohmann::json& payload);
  void apply_recorded(const nlohmann::json& payload);
  void apply_resolved(const nlohmann::json& payload);

  Options opts_;
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  StoreState state_;
  AppendFile events_;
  AppendFile audit_;
  FaultHook hook_;
};

}  // namespace credrisk
