#include "credrisk/ingest/date.hpp"

#include <charconv>
#include <cstdio>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

int parse_field(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw Error(ErrorCode::parse, "unparseable date '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(ErrorCode::parse, "unparseable date '" + std::string(text) + "'");
  }
  using namespace std::chrono;
  Date d{year{parse_field(text.substr(0, 4), text)},
         month{static_cast<unsigned>(parse_field(text.substr(5, 2), text))},
         day{static_cast<unsigned>(parse_field(text.substr(8, 2), text))}};
  if (!d.ok()) {
    throw Error(ErrorCode::parse, "invalid calendar date '" + std::string(text) + "'");
  }
  return d;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

int days_between(Date a, Date b) {
  using namespace std::chrono;
  return static_cast<int>((sys_days{b} - sys_days{a}).count());
}

std::string format_timestamp(std::chrono::system_clock::time_point tp) {
  using namespace std::chrono;
  auto ms = time_point_cast<milliseconds>(tp);
  auto day_point = floor<days>(ms);
  year_month_day ymd{day_point};
  hh_mm_ss hms{ms - day_point};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()),
                static_cast<int>(hms.subseconds().count()));
  return buf;
}

}  // namespace credrisk
