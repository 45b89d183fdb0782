#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace credrisk {

enum class ErrorCode {
  parse,
  invalid_argument,
  config,
  not_found,
  conflict,
  degenerate_class,
  unsupported,
  schema_mismatch,
  storage,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the project; `code()` is machine-readable and is
// what the CLI and HTTP layers report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace credrisk
