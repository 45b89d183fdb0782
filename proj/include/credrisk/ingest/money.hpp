#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace credrisk {

// Amount in currency minor units (cents).
struct Money {
  std::int64_t minor = 0;

  constexpr double as_double() const { return static_cast<double>(minor); }
  auto operator<=>(const Money&) const = default;
};

// Parses a non-negative decimal string with at most two fraction digits
// ("237.90", "25", "0.5"). Throws Error(parse) otherwise.
Money parse_money(std::string_view text);

// Inverse of parse_money: always two fraction digits.
std::string format_money(Money m);

}  // namespace credrisk
