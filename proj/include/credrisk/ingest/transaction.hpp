#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "credrisk/ingest/date.hpp"
#include "credrisk/ingest/money.hpp"

namespace credrisk {

enum class ContextFlag {
  address_change,
  job_switch,
  out_of_country,
  foreign_worker,
  air_ticket_purchase,
};

std::string_view to_string(ContextFlag f);
// Throws Error(parse) for unknown names.
ContextFlag parse_context_flag(std::string_view name);

struct GeoPoint {
  double lat = 0;  // degrees
  double lon = 0;  // degrees
  bool operator==(const GeoPoint&) const = default;
};

struct Location {
  GeoPoint point;
  std::string country;  // ISO country code
  bool operator==(const Location&) const = default;
};

struct Transaction {
  std::string tid;
  std::string account_id;
  Date date;
  std::string description;
  Money amount;
  std::string category;
  std::optional<Location> location;
  std::set<ContextFlag> context;

  bool operator==(const Transaction&) const = default;
};

// One JSON object per line:
//   {"tid","account","date","description","amount","category",
//    "location":{"lat","lon","country"}?, "context":[flag...]?}
// Throws Error(parse) naming the offending field.
Transaction parse_transaction_line(std::string_view line);
std::string to_line(const Transaction& txn);

Transaction transaction_from_json(const nlohmann::json& obj);
nlohmann::json to_json(const Transaction& txn);

}  // namespace credrisk
