#include "brickseq/error.hpp"

namespace brickseq {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kSizeNotInLibrary: return "SizeNotInLibrary";
    case ErrorCode::kCollision: return "Collision";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kNotAttached: return "NotAttached";
    case ErrorCode::kTokenOutOfRange: return "TokenOutOfRange";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kMalformedSequence: return "MalformedSequence";
    case ErrorCode::kTuplesAfterQueueEmpty: return "TuplesAfterQueueEmpty";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kEmptyAssembly: return "EmptyAssembly";
    case ErrorCode::kEmptyCloud: return "EmptyCloud";
    case ErrorCode::kDegenerateExtent: return "DegenerateExtent";
    case ErrorCode::kDegenerateCloud: return "DegenerateCloud";
    case ErrorCode::kEmptyMesh: return "EmptyMesh";
    case ErrorCode::kEmptyTarget: return "EmptyTarget";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kNoUnstableBrick: return "NoUnstableBrick";
    case ErrorCode::kInconsistentSequence: return "InconsistentSequence";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kPolicyError: return "PolicyError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace brickseq
