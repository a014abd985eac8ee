#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvxdiff {

enum class ErrorCode {
  DegenerateInput,
  DimensionMismatch,
  ZeroDirection,
  NotNested,
  DomainError,
  ConventionMismatch,
  MismatchDetected,
  NonConvergence,
  BreakpointHit,
  UnknownName,
  EmptyBox,
  NonFinite,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ConventionMismatch: return "ConventionMismatch";
    case ErrorCode::MismatchDetected: return "MismatchDetected";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BreakpointHit: return "BreakpointHit";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cvxdiff
