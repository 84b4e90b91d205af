#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpl {

enum class ErrorCode {
  InvalidValue,
  NegativeWeight,
  EmptySpace,
  NonfiniteWeight,
  LengthMismatch,
  ZeroMass,
  PZeroSum,
  EmptyList,
  EmptySupport,
  SyntaxError,
  UnknownToken,
  UnboundVariable,
  ShadowedVariable,
  AtomArity,
  UnknownSpace,
  UnknownAtom,
  CarrierMismatch,
  InvalidThreshold,
  ZeroPredicate,
  NotUnitary,
  InvalidP,
  DimensionMismatch,
  NoViolationFound,
  MapNotNonincreasing,
  ZeroTargetWeight,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidValue: return "INVALID_VALUE";
    case ErrorCode::NegativeWeight: return "NEGATIVE_WEIGHT";
    case ErrorCode::EmptySpace: return "EMPTY_SPACE";
    case ErrorCode::NonfiniteWeight: return "NONFINITE_WEIGHT";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::ZeroMass: return "ZERO_MASS";
    case ErrorCode::PZeroSum: return "P_ZERO_SUM";
    case ErrorCode::EmptyList: return "EMPTY_LIST";
    case ErrorCode::EmptySupport: return "EMPTY_SUPPORT";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnknownToken: return "UNKNOWN_TOKEN";
    case ErrorCode::UnboundVariable: return "UNBOUND_VARIABLE";
    case ErrorCode::ShadowedVariable: return "SHADOWED_VARIABLE";
    case ErrorCode::AtomArity: return "ATOM_ARITY";
    case ErrorCode::UnknownSpace: return "UNKNOWN_SPACE";
    case ErrorCode::UnknownAtom: return "UNKNOWN_ATOM";
    case ErrorCode::CarrierMismatch: return "CARRIER_MISMATCH";
    case ErrorCode::InvalidThreshold: return "INVALID_THRESHOLD";
    case ErrorCode::ZeroPredicate: return "ZERO_PREDICATE";
    case ErrorCode::NotUnitary: return "NOT_UNITARY";
    case ErrorCode::InvalidP: return "INVALID_P";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NoViolationFound: return "NO_VIOLATION_FOUND";
    case ErrorCode::MapNotNonincreasing: return "MAP_NOT_NONINCREASING";
    case ErrorCode::ZeroTargetWeight: return "ZERO_TARGET_WEIGHT";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
  }
  return "UNKNOWN";
}

/// Every library failure carries a stable code; `what()` is "CODE: detail".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qpl
