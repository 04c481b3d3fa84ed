#pragma once

#include <stdexcept>
#include <string>

namespace dlconn {

enum class ErrorCode {
  GroupTooLarge,
  InfiniteGroup,
  UnsupportedMatrix,
  DatumMismatch,
  NotSigmaFixed,
  NotSigmaStable,
  IdentityTwistRequired,
  DivisionNotExact,
  NotPrime,
  BoundExceeded,
  DivisionByZero,
  RealizationMismatch,
  CriterionFails,
  ParseError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::UnsupportedMatrix: return "UnsupportedMatrix";
    case ErrorCode::DatumMismatch: return "DatumMismatch";
    case ErrorCode::NotSigmaFixed: return "NotSigmaFixed";
    case ErrorCode::NotSigmaStable: return "NotSigmaStable";
    case ErrorCode::IdentityTwistRequired: return "IdentityTwistRequired";
    case ErrorCode::DivisionNotExact: return "DivisionNotExact";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::RealizationMismatch: return "RealizationMismatch";
    case ErrorCode::CriterionFails: return "CriterionFails";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library error carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace dlconn
