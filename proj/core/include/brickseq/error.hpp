#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brickseq {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfBounds,
  kSizeNotInLibrary,
  kCollision,
  kDisconnectedGraph,
  kNotAttached,
  kTokenOutOfRange,
  kMalformedHeader,
  kMalformedSequence,
  kTuplesAfterQueueEmpty,
  kSolverFailure,
  kEmptyAssembly,
  kEmptyCloud,
  kDegenerateExtent,
  kDegenerateCloud,
  kEmptyMesh,
  kEmptyTarget,
  kNonFiniteInput,
  kNoUnstableBrick,
  kInconsistentSequence,
  kBudgetExhausted,
  kParseError,
  kIoError,
  kPolicyError,
};

/// Stable identifier used in JSON diagnostics, e.g. "Collision".
std::string_view error_code_name(ErrorCode code);

/// Domain error carrying a machine-readable code. All library failures are
/// reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace brickseq
