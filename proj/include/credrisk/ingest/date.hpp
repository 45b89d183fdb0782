#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace credrisk {

using Date = std::chrono::year_month_day;

// Strict ISO-8601 calendar date, YYYY-MM-DD.
Date parse_date(std::string_view text);
std::string format_date(Date d);

// Signed difference b - a in days.
int days_between(Date a, Date b);

// Millisecond-resolution UTC timestamp as ISO-8601 ("2017-01-20T00:00:00.000Z").
std::string format_timestamp(std::chrono::system_clock::time_point tp);

}  // namespace credrisk
