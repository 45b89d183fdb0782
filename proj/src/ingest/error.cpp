#include "credrisk/error.hpp"

namespace credrisk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config: return "config_error";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::degenerate_class: return "degenerate_class";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::schema_mismatch: return "schema_mismatch";
    case ErrorCode::storage: return "storage_error";
  }
  return "unknown";
}

}  // namespace credrisk
