#include "credrisk/ingest/money.hpp"

#include <cctype>
#include <limits>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::parse,
              "invalid amount '" + std::string(text) + "': " + std::string(why));
}

}  // namespace

Money parse_money(std::string_view text) {
  if (text.empty()) bad(text, "empty");
  if (text.front() == '-') bad(text, "negative amount");
  if (text.front() == '+') text.remove_prefix(1);

  std::int64_t whole = 0;
  std::size_t i = 0;
  std::size_t int_digits = 0;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 1000;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    if (whole > kLimit) bad(text, "out of range");
    whole = whole * 10 + (text[i] - '0');
    ++int_digits;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      if (++frac_digits > 2) bad(text, "more than two fraction digits");
      frac = frac * 10 + (text[i] - '0');
    }
  }
  if (i != text.size()) bad(text, "unexpected character");
  if (int_digits == 0 && frac_digits == 0) bad(text, "no digits");
  if (frac_digits == 1) frac *= 10;
  return Money{whole * 100 + frac};
}

std::string format_money(Money m) {
  std::string sign = m.minor < 0 ? "-" : "";
  std::int64_t v = m.minor < 0 ? -m.minor : m.minor;
  std::string cents = std::to_string(v % 100);
  if (cents.size() < 2) cents.insert(0, "0");
  return sign + std::to_string(v / 100) + "." + cents;
}

}  // namespace credrisk
