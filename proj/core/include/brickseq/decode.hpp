#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/geometry.hpp"
#include "brickseq/rng.hpp"
#include "brickseq/stability.hpp"
#include "brickseq/token.hpp"
#include "brickseq/tokenizer.hpp"

namespace brickseq {

/// Token prefix plus the detokenizer state it produces. The random stream lives with
/// the caller of generate(), not here, so two states compare equal exactly when their
/// prefixes and parse states do.
struct DecodeState {
  TokenSequence tokens;
  TreeCursor cursor;

  /// State right after BOS.
  static DecodeState start();

  void push(const Token& token);
  void push(std::span<const Token> tokens);

  const BrickAssembly& assembly() const { return cursor.assembly(); }
  bool has_root() const { return cursor.state().phase == CursorPhase::kBody || finished(); }
  bool finished() const { return cursor.state().phase == CursorPhase::kFinished; }
  /// Brick whose child group is open, -1 once the queue is empty.
  int current_parent() const { return cursor.state().current_parent; }
  /// Last accepted f in the open group, -1 at the start of a group.
  int last_f() const { return cursor.state().last_f; }

  bool operator==(const DecodeState&) const = default;
};

/// Rebuilds a state by feeding `prefix` through a fresh cursor.
DecodeState replay(std::span<const Token> prefix);

enum class RejectReason {
  kConnectorOutOfRange,
  kSizeNotInLibrary,
  kAnchorOutOfRange,
  kNonMonotoneF,
  kOutOfBounds,
  kCollision,
};
inline constexpr std::size_t kRejectReasonCount = 6;

std::string_view reject_reason_name(RejectReason reason);

struct TupleCheck {
  std::optional<RejectReason> reason;
  Brick brick;  // decoded placement when accepted
  bool accepted() const { return !reason.has_value(); }
};

/// Stage 1: f within the parent's connectors, catalog size, m within the child, f above
/// the group's last f. Stage 2: bounds and collision of the decoded brick.
/// Throws Error(InvalidArgument) when the state has no open parent.
TupleCheck validate_tuple(const DecodeState& state, const ChildTuple& tuple);

struct Action {
  enum class Kind { kTuple, kEop };
  Kind kind = Kind::kEop;
  ChildTuple tuple;

  static Action eop() { return {}; }
  static Action child(ChildTuple t) { return {Kind::kTuple, t}; }
};

struct ProposalContext {
  const VoxelGrid& target;
  const DecodeState& state;
  std::span<const ChildTuple> rejected;  // already refused for the current slot
};

/// Source of candidate actions. The harness validates everything a policy proposes.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Brick propose_root(const VoxelGrid& target, Rng& rng) = 0;
  virtual Action propose(const ProposalContext& context, Rng& rng) = 0;

  double temperature() const { return temperature_; }
  void set_temperature(double t) { temperature_ = t; }

 protected:
  double temperature_ = 1.0;
};

struct DecodeBudgets {
  int max_resamples_per_tuple = 32;
  int max_rollbacks = 16;
  int max_bricks = 400;

  /// Throws Error(InvalidArgument) unless every budget is positive.
  void validate() const;
};

struct RollbackEvent {
  std::size_t from_length = 0;  // tokens before truncation (EOS included)
  std::size_t to_length = 0;    // tokens kept
  int unstable_brick = -1;
  int parent = -1;
};

struct DecodeTrace {
  std::size_t resamples = 0;
  std::size_t rollbacks = 0;
  std::size_t forced_eops = 0;
  std::array<std::size_t, kRejectReasonCount> rejected_reasons{};
  std::vector<RollbackEvent> rollback_events;
};

struct GenerateResult {
  BrickAssembly assembly;
  TokenSequence sequence;
  StabilityReport report;
  DecodeTrace trace;
  bool stable = false;
  /// Set when the rollback budget ran out; the result is then the best attempt.
  std::optional<std::string> exhausted;
};

/// Samples a complete sequence under the validity checks, scores it, and rolls back
/// while it is unstable and the budget allows.
GenerateResult generate(Policy& policy, const VoxelGrid& target, const DecodeBudgets& budgets = {},
                        const PhysicsParams& params = {}, std::uint64_t seed = 0);

/// Truncates before the tokens that created the parent of the first zero-score brick and
/// rebuilds the state for that prefix. Restarts after BOS when that parent is the root.
/// Throws Error(NoUnstableBrick) or Error(InconsistentSequence).
DecodeState rollback(std::span<const Token> sequence, const BrickAssembly& assembly,
                     const StabilityReport& report);

}  // namespace brickseq
