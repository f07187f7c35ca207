#include "kuiper/error.hpp"

namespace kuiper {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NumericalDomain: return "NumericalDomain";
    case ErrorCode::DerivativeNearZero: return "DerivativeNearZero";
    case ErrorCode::InadmissibleRoot: return "InadmissibleRoot";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnboundedQuantile: return "UnboundedQuantile";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace kuiper
