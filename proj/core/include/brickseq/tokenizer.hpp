#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/error.hpp"
#include "brickseq/token.hpp"

namespace brickseq {

/// Relative encoding of a non-root brick: (f, h, w, m).
struct ChildTuple {
  int f = 0;
  int h = 1;
  int w = 1;
  int m = 0;
  auto operator<=>(const ChildTuple&) const = default;
};

/// Serializes a connected assembly: BOS, root (x, y, z, h, w), then for every dequeued
/// parent its children as (f, h, w, m) in increasing f followed by EOP. The trailing
/// run of EOP is dropped before EOS.
/// Throws Error(EmptyAssembly) or Error(DisconnectedGraph).
TokenSequence tokenize(const BrickAssembly& assembly);

enum class CursorPhase { kExpectBos, kHeader, kBody, kFinished };

/// Incremental tree detokenizer. Tokens are consumed one at a time while the BFS queue
/// of pending parents is kept exactly as the batch detokenizer would keep it. The next
/// parent is popped eagerly, as soon as the previous group closes.
class TreeCursor {
 public:
  struct State {
    CursorPhase phase = CursorPhase::kExpectBos;
    int header_pos = 0;
    std::array<int, 5> header{};  // x, y, z, h, w
    int tuple_pos = 0;            // tokens of the current tuple already read
    ChildTuple tuple{};
    BrickAssembly assembly;
    std::vector<int> parents;          // -1 for the root
    std::vector<std::size_t> origins;  // index of the first token that produced the brick
    std::vector<int> connectors;       // f of each brick's tuple, -1 for the root
    int current_parent = -1;           // brick whose group is open, -1 when none remain
    int last_f = -1;                   // last accepted f in the open group
    std::vector<int> group;            // children accepted in the open group
    std::deque<int> pending;           // parents waiting for their group
    std::size_t consumed = 0;
    std::size_t eop_count = 0;

    bool operator==(const State&) const = default;
  };

  TreeCursor() = default;
  explicit TreeCursor(State state) : state_(std::move(state)) {}

  /// Consumes one token. On error throws and leaves the state unchanged.
  void push(const Token& token);

  const State& state() const { return state_; }
  const BrickAssembly& assembly() const { return state_.assembly; }
  /// Between tuples in the body of the sequence.
  bool at_boundary() const { return state_.phase == CursorPhase::kBody && state_.tuple_pos == 0; }
  /// No parent is left to receive children.
  bool exhausted() const { return at_boundary() && state_.current_parent < 0; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Compares parse state only; warnings are diagnostics.
  bool operator==(const TreeCursor& other) const { return state_ == other.state_; }

 private:
  void push_header(const Token& token);
  void push_body(const Token& token);
  void close_group();

  State state_;
  std::vector<std::string> warnings_;
};

enum class DetokenizeMode { kStrict, kLenient };

struct DetokenizeResult {
  BrickAssembly assembly;          // bricks in token order
  std::vector<int> parents;        // tree implied by the sequence
  std::vector<std::string> warnings;
  std::optional<Error> error;      // lenient mode only: first structural violation
};

/// Rebuilds the assembly. Strict mode throws on the first violation (MalformedHeader,
/// MalformedSequence, TokenOutOfRange, TuplesAfterQueueEmpty, SizeNotInLibrary,
/// OutOfBounds, Collision); lenient mode returns the prefix built so far with the
/// error recorded. Non-increasing f inside a group only produces a warning.
DetokenizeResult detokenize(std::span<const Token> tokens,
                            DetokenizeMode mode = DetokenizeMode::kStrict);

struct SequenceStats {
  std::size_t bricks = 0;      // N
  std::size_t eop_tokens = 0;  // I
  std::size_t length = 0;      // T, padding excluded
  bool operator==(const SequenceStats&) const = default;
};

/// Throws Error(MalformedSequence) unless T = 4N + I + 3 and T <= 5N + 2.
SequenceStats sequence_stats(std::span<const Token> tokens);

/// Flat comparison serialization: BOS, (h, w, x, y, z) per brick in (z, y, x) order, EOS.
TokenSequence flat_tokenize(const BrickAssembly& assembly);

}  // namespace brickseq
