#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "credrisk/error.hpp"
#include "credrisk/store/account_stats.hpp"
#include "credrisk/store/category_medians.hpp"
#include "credrisk/store/store.hpp"

using namespace credrisk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("credrisk_store_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Crash {};

AccountSeed seed(std::string id, double r) {
  AccountSeed s;
  s.account_id = std::move(id);
  s.r_offline = r;
  s.context.home_country = "US";
  s.history = {{parse_date("2017-01-10"), Money{5000}}, {parse_date("2017-01-11"), Money{7000}}};
  return s;
}

RiskAssessment assessment(std::string tid, std::string account, std::string category, int day,
                          std::optional<RiskTriple> triple, bool flagged = false) {
  RiskAssessment a;
  a.transaction.tid = std::move(tid);
  a.transaction.account_id = std::move(account);
  a.transaction.date = parse_date("2017-02-" + std::string(day < 10 ? "0" : "") + std::to_string(day));
  a.transaction.description = "x";
  a.transaction.amount = Money{1000 + day};
  a.transaction.category = std::move(category);
  a.relevant_rules = {1, 2};
  a.timestamp = "2017-02-01T00:00:00.000Z";
  if (triple) {
    a.outcome = Outcome::scored;
    a.failed_standard_rules = {1};
    a.triple = triple;
    a.r_offline_after = 0.8 * triple->offline + 0.2 * triple->overall;
    a.flagged = flagged;
    if (flagged) a.reasons = {{ReasonKind::threshold_exceeded, "x"}};
  }
  return a;
}

// A few accounts, scored and passed transactions, flags and one resolution.
void populate(Store& store, int n = 40) {
  for (auto [id, r] : {std::pair{"1", 70.0}, {"2", 23.0}, {"3", 82.0}}) {
    if (!store.account(id)) store.register_account(seed(id, r), "t0");
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 100);
  for (int i = 0; i < n; ++i) {
    auto acc = std::to_string(1 + i % 3);
    std::optional<RiskTriple> triple;
    if (i % 4 != 0) triple = RiskTriple{u(rng), u(rng), u(rng)};
    auto a = assessment("t" + std::to_string(i), acc, i % 2 ? "Airlines" : "Supermarkets",
                        1 + i % 27, triple, triple && triple->overall > 60);
    store.persist_assessment(a);
  }
  auto pending = store.list_flags(FlagStatus::pending);
  if (!pending.empty()) store.resolve_flag(pending.back().flag_id, Verdict::confirmed_good, "ok", "t1");
}

}  // namespace

TEST_CASE("running statistics") {
  RunningStat s;
  for (double x : {100.0, 200.0, 300.0}) s.add(x);
  CHECK(s.mean() == doctest::Approx(200));
  CHECK(s.sigma() == doctest::Approx(100));

  RunningStat one;
  one.add(5);
  CHECK(one.sigma() == 0);

  AccountStats st;
  st = update_account_stats(st, parse_date("2017-01-01"), Money{100});
  CHECK_FALSE(st.amount_sigma().has_value());
  CHECK(st.n_transactions() == 1);
}

TEST_CASE("running statistics agree with a two-pass recomputation") {
  std::mt19937_64 rng(42);
  std::lognormal_distribution<double> amounts(8.0, 1.5);
  std::vector<double> xs;
  RunningStat s;
  for (int i = 0; i < 10000; ++i) {
    double x = std::floor(amounts(rng));
    xs.push_back(x);
    s.add(x);
  }
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double sigma = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  CHECK(std::abs(s.mean() - mean) <= 1e-9 * std::abs(mean));
  CHECK(std::abs(s.sigma() - sigma) <= 1e-9 * sigma);
}

TEST_CASE("daily counts roll over with the calendar day") {
  AccountStats s;
  auto add = [&](const char* d) { s = update_account_stats(s, parse_date(d), Money{100}); };
  add("2017-01-01");
  add("2017-01-01");
  add("2017-01-02");
  CHECK(s.daily_count.count() == 1);
  CHECK(s.count_on(parse_date("2017-01-02")) == 1);
  CHECK(s.count_on(parse_date("2017-01-03")) == 0);
  add("2017-01-05");
  CHECK(s.daily_count.count() == 2);
  CHECK(*s.daily_count_mean() == doctest::Approx(1.5));
  CHECK(format_date(*s.last_txn_date) == "2017-01-05");
}

TEST_CASE("category medians") {
  CategoryMedians m(500);
  CHECK_FALSE(m.medians().has_value());
  m.add({67, 70, 67.9});
  CHECK(*m.medians() == RiskTriple{67, 70, 67.9});

  CategoryMedians two;
  two.add({60, 60, 60});
  two.add({70, 70, 70});
  CHECK(two.medians()->online == 65);

  CategoryMedians w(3);
  for (double v : {1.0, 2.0, 3.0, 100.0}) w.add({v, v, v});
  CHECK(w.size() == 3);
  CHECK(w.medians()->online == 3);
}

TEST_CASE("medians match a sort oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 100);
  for (std::size_t cap : {std::size_t{1}, std::size_t{2}, std::size_t{7}, std::size_t{500}}) {
    CategoryMedians m(cap);
    std::deque<RiskTriple> window;
    int ops = cap == 500 ? 10000 : 2000;
    for (int i = 0; i < ops; ++i) {
      RiskTriple t{u(rng), std::round(u(rng)), u(rng)};
      m = update_medians(std::move(m), t);
      window.push_back(t);
      if (window.size() > cap) window.pop_front();
      auto oracle = [&](double RiskTriple::*field) {
        std::vector<double> v;
        for (const auto& w : window) v.push_back(w.*field);
        std::sort(v.begin(), v.end());
        std::size_t n = v.size();
        return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
      };
      auto med = *m.medians();
      if (med.online != oracle(&RiskTriple::online) || med.offline != oracle(&RiskTriple::offline) ||
          med.overall != oracle(&RiskTriple::overall)) {
        FAIL("median mismatch at op " << i << " with capacity " << cap);
      }
    }
    CHECK(m.size() == std::min<std::size_t>(cap, static_cast<std::size_t>(ops)));
  }
}

TEST_CASE("accounts and assessments") {
  auto store = Store::in_memory();
  auto acc = store->register_account(seed("1", 70), "t0");
  CHECK(acc.risk.r_offline == 70);
  CHECK(acc.baseline_r_offline == 70);
  CHECK(acc.status == AccountStatus::active);
  CHECK(acc.stats.n_transactions() == 2);
  CHECK_THROWS_AS(store->register_account(seed("1", 10), "t0"), Error);
  CHECK_FALSE(store->account("nope").has_value());

  auto first = assessment("a", "1", "Airlines", 1, RiskTriple{50, 70, 64});
  store->persist_assessment(first);
  auto second = assessment("b", "1", "Airlines", 2, RiskTriple{67, 70, 67.9});
  store->persist_assessment(second);
  auto now = *store->account("1");
  CHECK(now.last_assessment->tid() == "b");
  CHECK(*now.last_triple == RiskTriple{67, 70, 67.9});
  CHECK(now.risk.r_offline == doctest::Approx(0.8 * 70 + 0.2 * 67.9));
  CHECK(now.risk.source == RiskSource::feedback);
  CHECK(store->category_medians("Airlines")->online == doctest::Approx(58.5));

  auto orphan = assessment("c", "9", "Airlines", 2, std::nullopt);
  CHECK_THROWS_AS(store->persist_assessment(orphan), Error);
}

TEST_CASE("pass-branch records leave medians and risk alone") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 70), "t0");
  auto a = assessment("p", "1", "Groceries", 3, std::nullopt);
  store->persist_assessment(a);
  auto acc = *store->account("1");
  CHECK(acc.risk.r_offline == 70);
  CHECK(acc.risk.source == RiskSource::model);
  CHECK(acc.stats.n_transactions() == 3);
  CHECK_FALSE(acc.last_triple.has_value());
  CHECK_FALSE(store->category_medians("Groceries").has_value());
}

TEST_CASE("context facts carried by transactions") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 70), "t0");
  auto a = assessment("x", "1", "Airlines", 4, std::nullopt);
  a.transaction.context = {ContextFlag::job_switch, ContextFlag::out_of_country};
  a.transaction.location = Location{{51.5, -0.12}, "GB"};
  store->persist_assessment(a);
  auto ctx = store->account("1")->context;
  CHECK(ctx.flags == std::set<ContextFlag>{ContextFlag::job_switch});
  CHECK(format_date(*ctx.last_air_ticket) == "2017-02-04");
  CHECK(ctx.last_known_location->country == "GB");
}

TEST_CASE("flag workflow") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 70), "t0");
  store->register_account(seed("2", 23), "t0");
  CHECK(store->list_flags(FlagStatus::confirmed_bad).empty());

  auto a = assessment("1", "1", "Airlines", 1, RiskTriple{66.7, 70, 67.7}, true);
  store->persist_assessment(a);
  REQUIRE(a.flag_id.has_value());
  auto b = assessment("2", "2", "Airlines", 1, RiskTriple{100, 23, 76.9}, true);
  store->persist_assessment(b);
  CHECK(*b.flag_id == *a.flag_id + 1);

  auto pending = store->list_flags(FlagStatus::pending);
  REQUIRE(pending.size() == 2);
  CHECK(pending[0].flag_id == *b.flag_id);  // newest first
  CHECK(store->account("1")->status == AccountStatus::suspended);

  auto bad = store->resolve_flag(*a.flag_id, Verdict::confirmed_bad, "fraud", "t2");
  CHECK(bad.status == FlagStatus::confirmed_bad);
  CHECK(bad.resolution_note == "fraud");
  auto acc1 = *store->account("1");
  CHECK(acc1.status == AccountStatus::suspended);
  CHECK(acc1.risk.r_offline == 95);
  CHECK(acc1.risk.source == RiskSource::manual);

  store->resolve_flag(*b.flag_id, Verdict::confirmed_good, "", "t3");
  auto acc2 = *store->account("2");
  CHECK(acc2.status == AccountStatus::active);
  CHECK(acc2.risk.r_offline == 23);

  CHECK(store->list_flags(FlagStatus::pending).empty());
  CHECK(store->list_flags().size() == 2);

  try {
    store->resolve_flag(*a.flag_id, Verdict::confirmed_good, "", "t4");
    FAIL("second resolution accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::conflict);
  }
  try {
    store->resolve_flag(999, Verdict::confirmed_good, "", "t4");
    FAIL("unknown flag accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_found);
  }
}

TEST_CASE("confirmed_bad keeps a higher risk") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 98), "t0");
  auto a = assessment("1", "1", "Airlines", 1, RiskTriple{100, 98, 99.4}, true);
  store->persist_assessment(a);
  store->resolve_flag(*a.flag_id, Verdict::confirmed_bad, "", "t");
  CHECK(store->account("1")->risk.r_offline > 95);
}

TEST_CASE("concurrent resolution: first writer wins") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 70), "t0");
  auto a = assessment("1", "1", "Airlines", 1, RiskTriple{66.7, 70, 67.7}, true);
  store->persist_assessment(a);
  std::atomic<int> ok{0}, conflicts{0};
  std::vector<std::jthread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      try {
        store->resolve_flag(*a.flag_id, i % 2 ? Verdict::confirmed_bad : Verdict::confirmed_good, "", "t");
        ++ok;
      } catch (const Error&) {
        ++conflicts;
      }
    });
  }
  threads.clear();
  CHECK(ok == 1);
  CHECK(conflicts == 7);
}

TEST_CASE("state snapshot JSON round trip") {
  auto store = Store::in_memory();
  populate(*store);
  auto state = store->snapshot_state();
  CHECK(store_state_from_json(nlohmann::json::parse(to_json(state).dump())) == state);
}

TEST_CASE("reopen rebuilds the same state") {
  TempDir dir;
  StoreState before;
  {
    auto store = Store::open(dir.path);
    populate(*store);
    before = store->snapshot_state();
  }
  auto reopened = Store::open(dir.path);
  CHECK(reopened->snapshot_state() == before);
  CHECK(fs::exists(dir.path / "audit.jsonl"));

  // Audit log holds one line per assessment.
  std::ifstream audit(dir.path / "audit.jsonl");
  std::size_t lines = 0;
  for (std::string l; std::getline(audit, l);) ++lines;
  CHECK(lines == 40);
}

TEST_CASE("crash injection during compaction") {
  for (std::string point : {"snapshot_written", "manifest_written", "log_truncated"}) {
    CAPTURE(point);
    TempDir dir;
    StoreState before;
    {
      auto store = Store::open(dir.path);
      populate(*store, 20);
      store->compact();  // an earlier, complete snapshot
      populate(*store, 8);
      auto extra = assessment("late", "1", "Airlines", 9, RiskTriple{90, 70, 84}, true);
      store->persist_assessment(extra);
      before = store->snapshot_state();
      store->set_fault_hook([&](std::string_view p) {
        if (p == point) throw Crash{};
      });
      CHECK_THROWS_AS(store->compact(), Crash);
    }
    auto rebuilt = Store::open(dir.path);
    CHECK(rebuilt->snapshot_state() == before);

    // Keeps working after recovery.
    auto a = assessment("after", "2", "Airlines", 10, RiskTriple{10, 20, 13});
    rebuilt->persist_assessment(a);
    auto after = rebuilt->snapshot_state();
    rebuilt.reset();
    CHECK(Store::open(dir.path)->snapshot_state() == after);
  }
}

TEST_CASE("crash before an append leaves the prior state") {
  TempDir dir;
  StoreState before;
  {
    auto store = Store::open(dir.path);
    populate(*store, 10);
    before = store->snapshot_state();
    store->set_fault_hook([](std::string_view p) {
      if (p == "append") throw Crash{};
    });
    auto a = assessment("lost", "1", "Airlines", 3, RiskTriple{90, 70, 84}, true);
    CHECK_THROWS_AS(store->persist_assessment(a), Crash);
    CHECK(store->snapshot_state() == before);
  }
  CHECK(Store::open(dir.path)->snapshot_state() == before);
}

TEST_CASE("storage failure marks the assessment unpersisted") {
  auto store = Store::in_memory();
  store->register_account(seed("1", 70), "t0");
  auto before = store->snapshot_state();
  store->set_fault_hook([](std::string_view p) {
    if (p == "append") throw Error(ErrorCode::storage, "disk full");
  });
  auto a = assessment("1", "1", "Airlines", 1, RiskTriple{66.7, 70, 67.7}, true);
  store->persist_assessment(a);
  CHECK_FALSE(a.persisted);
  CHECK_FALSE(a.flag_id.has_value());
  CHECK(store->snapshot_state() == before);

  store->set_fault_hook({});
  store->persist_assessment(a);
  CHECK(a.persisted);
  CHECK(store->list_flags().size() == 1);
}

TEST_CASE("torn trailing record is discarded") {
  TempDir dir;
  StoreState before;
  {
    auto store = Store::open(dir.path);
    populate(*store, 12);
    before = store->snapshot_state();
  }
  {
    std::ofstream log(dir.path / "events.jsonl", std::ios::app | std::ios::binary);
    log << R"({"type":"transaction_recorded","seq":)";
  }
  auto store = Store::open(dir.path);
  CHECK(store->snapshot_state() == before);
  auto a = assessment("next", "3", "Airlines", 4, std::nullopt);
  store->persist_assessment(a);
  auto after = store->snapshot_state();
  store.reset();
  CHECK(Store::open(dir.path)->snapshot_state() == after);
}

TEST_CASE("corruption in the middle of the log is reported") {
  TempDir dir;
  {
    auto store = Store::open(dir.path);
    populate(*store, 5);
  }
  std::ifstream in(dir.path / "events.jsonl");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  in.close();
  lines[2] = "{garbage";
  std::ofstream out(dir.path / "events.jsonl", std::ios::trunc);
  for (const auto& l : lines) out << l << "\n";
  out.close();
  try {
    Store::open(dir.path);
    FAIL("corrupt log accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::storage);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
