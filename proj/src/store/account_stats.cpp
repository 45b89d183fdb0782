#include "credrisk/store/account_stats.hpp"

#include <algorithm>
#include <cmath>

namespace credrisk {

double RunningStat::sigma() const {
  if (n_ < 2) return 0.0;
  return std::sqrt(std::max(m2_, 0.0) / static_cast<double>(n_ - 1));
}

std::optional<double> AccountStats::amount_mean() const {
  if (amount.count() < 2) return std::nullopt;
  return amount.mean();
}

std::optional<double> AccountStats::amount_sigma() const {
  if (amount.count() < 2) return std::nullopt;
  return amount.sigma();
}

std::optional<double> AccountStats::daily_count_mean() const {
  if (daily_count.count() < 2) return std::nullopt;
  return daily_count.mean();
}

std::optional<double> AccountStats::daily_count_sigma() const {
  if (daily_count.count() < 2) return std::nullopt;
  return daily_count.sigma();
}

std::uint64_t AccountStats::count_on(Date day) const {
  return current_day && *current_day == day ? current_day_count : 0;
}

AccountStats update_account_stats(AccountStats stats, Date date, Money amount) {
  stats.amount.add(amount.as_double());
  if (!stats.current_day) {
    stats.current_day = date;
    stats.current_day_count = 1;
  } else if (date > *stats.current_day) {
    stats.daily_count.add(static_cast<double>(stats.current_day_count));
    stats.current_day = date;
    stats.current_day_count = 1;
  } else {
    ++stats.current_day_count;
  }
  if (!stats.last_txn_date || date > *stats.last_txn_date) stats.last_txn_date = date;
  return stats;
}

}  // namespace credrisk
