#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kuiper {

enum class ErrorCode {
  NonConvergence,
  NumericalDomain,
  DerivativeNearZero,
  InadmissibleRoot,
  Overflow,
  UnboundedQuantile,
  EmptyInput,
  UnsortedInput,
  OutOfRange,
  LengthMismatch,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to a stable name and exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kuiper
