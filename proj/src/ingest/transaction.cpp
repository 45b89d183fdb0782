#include "credrisk/ingest/transaction.hpp"

#include <array>
#include <cmath>

#include <json.hpp>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<ContextFlag, std::string_view>, 5> kFlagNames{{
    {ContextFlag::address_change, "address_change"},
    {ContextFlag::job_switch, "job_switch"},
    {ContextFlag::out_of_country, "out_of_country"},
    {ContextFlag::foreign_worker, "foreign_worker"},
    {ContextFlag::air_ticket_purchase, "air_ticket_purchase"},
}};

[[noreturn]] void field_error(std::string_view field, std::string_view what) {
  throw Error(ErrorCode::parse, "field '" + std::string(field) + "': " + std::string(what));
}

const std::string& required_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) field_error(field, "missing required field");
  if (!it->is_string()) field_error(field, "must be a string");
  return it->get_ref<const std::string&>();
}

double required_number(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) field_error(field, "missing required field");
  if (!it->is_number()) field_error(field, "must be a number");
  return it->get<double>();
}

}  // namespace

std::string_view to_string(ContextFlag f) {
  for (const auto& [flag, name] : kFlagNames) {
    if (flag == f) return name;
  }
  return "unknown";
}

ContextFlag parse_context_flag(std::string_view name) {
  for (const auto& [flag, n] : kFlagNames) {
    if (n == name) return flag;
  }
  throw Error(ErrorCode::parse, "unknown context flag '" + std::string(name) + "'");
}

Transaction parse_transaction_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  return transaction_from_json(obj);
}

Transaction transaction_from_json(const json& obj) {
  if (!obj.is_object()) throw Error(ErrorCode::parse, "transaction must be a JSON object");

  Transaction txn;
  txn.tid = required_string(obj, "tid");
  if (txn.tid.empty()) field_error("tid", "must be non-empty");
  txn.account_id = required_string(obj, "account");
  if (txn.account_id.empty()) field_error("account", "must be non-empty");
  try {
    txn.date = parse_date(required_string(obj, "date"));
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with("field")) throw;
    field_error("date", e.what());
  }
  txn.description = required_string(obj, "description");
  try {
    txn.amount = parse_money(required_string(obj, "amount"));
  } catch (const Error& e) {
    field_error("amount", e.what());
  }
  txn.category = required_string(obj, "category");
  if (txn.category.empty()) field_error("category", "must be non-empty");

  if (auto it = obj.find("location"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) field_error("location", "must be an object");
    Location loc;
    loc.point.lat = required_number(*it, "lat");
    loc.point.lon = required_number(*it, "lon");
    if (!(std::abs(loc.point.lat) <= 90.0)) field_error("location.lat", "out of range");
    if (!(std::abs(loc.point.lon) <= 180.0)) field_error("location.lon", "out of range");
    loc.country = required_string(*it, "country");
    txn.location = std::move(loc);
  }
  if (auto it = obj.find("context"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) field_error("context", "must be an array of flag names");
    for (const auto& f : *it) {
      if (!f.is_string()) field_error("context", "flag names must be strings");
      txn.context.insert(parse_context_flag(f.get<std::string>()));
    }
  }
  return txn;
}

std::string to_line(const Transaction& txn) { return to_json(txn).dump(); }

json to_json(const Transaction& txn) {
  json obj = {
      {"tid", txn.tid},
      {"account", txn.account_id},
      {"date", format_date(txn.date)},
      {"description", txn.description},
      {"amount", format_money(txn.amount)},
      {"category", txn.category},
  };
  if (txn.location) {
    obj["location"] = {{"lat", txn.location->point.lat},
                       {"lon", txn.location->point.lon},
                       {"country", txn.location->country}};
  }
  if (!txn.context.empty()) {
    json flags = json::array();
    for (auto f : txn.context) flags.push_back(std::string(to_string(f)));
    obj["context"] = std::move(flags);
  }
  return obj;
}

}  // namespace credrisk
