#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weyllab {

enum class ErrorCode {
  ZeroArgument,
  InvalidSymbol,
  ParseError,
  UnsupportedOrder,
  UnsupportedDimension,
  DimensionMismatch,
  BandMismatch,
  DomainError,
  PairTooClose,
  OverflowRisk,
  NonIntegrable,
  UnderResolved,
  DegenerateFit,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BandMismatch: return "BandMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PairTooClose: return "PairTooClose";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to bad input) map to CLI exit status 3.
inline bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverflowRisk:
    case ErrorCode::NonIntegrable:
    case ErrorCode::UnderResolved:
    case ErrorCode::DegenerateFit:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace weyllab
