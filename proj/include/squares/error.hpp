#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace squares {

enum class ErrorCode {
  order_mismatch,
  invalid_order,
  invalid_lambda,
  invalid_argument,
  cap_exceeded,
  entry_range,
  parse_error,
  shape_error,
  value_error,
  internal_inconsistency,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace squares
