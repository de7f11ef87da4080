#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fca {

enum class ErrorCode {
  kSizeMismatch,
  kNotAnEquivalence,
  kCycleDetected,
  kNotAPartialOrder,
  kGuardExceeded,
  kNotALattice,
  kNotAClosureOperator,
  kNotAClosureSystem,
  kNotAnExtent,
  kNotClosed,
  kIncompleteConceptList,
  kIndexOutOfRange,
  kTooFewObjects,
  kUnknownMethod,
  kUniverseMismatch,
  kParse,
  kDuplicateName,
  kUnknownName,
  // attribute exploration
  kViolatesAccepted,
  kDoesNotRefute,
  kDuplicateObject,
  kSessionFinished,
  kNotFound,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::kSizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::kNotAnEquivalence: return "NOT_AN_EQUIVALENCE";
    case ErrorCode::kCycleDetected: return "CYCLE_DETECTED";
    case ErrorCode::kNotAPartialOrder: return "NOT_A_PARTIAL_ORDER";
    case ErrorCode::kGuardExceeded: return "GUARD_EXCEEDED";
    case ErrorCode::kNotALattice: return "NOT_A_LATTICE";
    case ErrorCode::kNotAClosureOperator: return "NOT_A_CLOSURE_OPERATOR";
    case ErrorCode::kNotAClosureSystem: return "NOT_A_CLOSURE_SYSTEM";
    case ErrorCode::kNotAnExtent: return "NOT_AN_EXTENT";
    case ErrorCode::kNotClosed: return "NOT_CLOSED";
    case ErrorCode::kIncompleteConceptList: return "INCOMPLETE_CONCEPT_LIST";
    case ErrorCode::kIndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kTooFewObjects: return "TOO_FEW_OBJECTS";
    case ErrorCode::kUnknownMethod: return "UNKNOWN_METHOD";
    case ErrorCode::kUniverseMismatch: return "UNIVERSE_MISMATCH";
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kDuplicateName: return "DUPLICATE_NAME";
    case ErrorCode::kUnknownName: return "UNKNOWN_NAME";
    case ErrorCode::kViolatesAccepted: return "VIOLATES_ACCEPTED";
    case ErrorCode::kDoesNotRefute: return "DOES_NOT_REFUTE";
    case ErrorCode::kDuplicateObject: return "DUPLICATE_OBJECT";
    case ErrorCode::kSessionFinished: return "SESSION_FINISHED";
    case ErrorCode::kNotFound: return "NOT_FOUND";
  }
  return "UNKNOWN";
}

/// Domain error raised by every fca operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail) : std::runtime_error(detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fca
