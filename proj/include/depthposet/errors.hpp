#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace depthposet {

enum class ErrorCode {
  DuplicateId,
  UnknownId,
  DimensionMismatch,
  BoundaryNotSquaredZero,
  MissingValue,
  NotInjective,
  NotMonotone,
  NotIncident,
  NotShallow,
  NTooSmall,
  UnsupportedDimension,
  CyclicInput,
  TooLarge,
  UnknownPair,
  IncidentCells,
  OutOfRange,
  NotApplicable,
  ParseError,
  MismatchFound,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code tells callers (and the CLI
// exit status) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BoundaryNotSquaredZero: return "BoundaryNotSquaredZero";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotIncident: return "NotIncident";
    case ErrorCode::NotShallow: return "NotShallow";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::CyclicInput: return "CyclicInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnknownPair: return "UnknownPair";
    case ErrorCode::IncidentCells: return "IncidentCells";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MismatchFound: return "MismatchFound";
  }
  return "Unknown";
}

}  // namespace depthposet
