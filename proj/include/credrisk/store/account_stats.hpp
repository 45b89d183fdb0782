#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "credrisk/ingest/date.hpp"
#include "credrisk/ingest/transaction.hpp"

namespace credrisk {

// Single-pass mean / sample variance (Welford).
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  // Sample (n - 1) standard deviation; 0 below two samples.
  double sigma() const;
  double m2() const { return m2_; }

  static RunningStat restore(std::uint64_t n, double mean, double m2) {
    RunningStat s;
    s.n_ = n;
    s.mean_ = mean;
    s.m2_ = m2;
    return s;
  }

  bool operator==(const RunningStat&) const = default;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

// Behavioural baseline of one account: transaction amounts (minor units)
// and transactions per active day. A day's count joins the daily
// statistics once a later day is seen.
struct AccountStats {
  std::string account_id;
  RunningStat amount;
  RunningStat daily_count;
  std::optional<Date> current_day;
  std::uint64_t current_day_count = 0;
  std::optional<Date> last_txn_date;

  std::uint64_t n_transactions() const { return amount.count(); }

  // nullopt below two samples ("insufficient data").
  std::optional<double> amount_mean() const;
  std::optional<double> amount_sigma() const;
  std::optional<double> daily_count_mean() const;
  std::optional<double> daily_count_sigma() const;

  // Transactions already seen on `day`.
  std::uint64_t count_on(Date day) const;

  bool operator==(const AccountStats&) const = default;
};

// Folds one transaction into the statistics. Transactions dated before the
// current day are counted toward the current day.
AccountStats update_account_stats(AccountStats stats, Date date, Money amount);
inline AccountStats update_account_stats(AccountStats stats, const Transaction& txn) {
  return update_account_stats(std::move(stats), txn.date, txn.amount);
}

}  // namespace credrisk
