#include "brickseq/decode.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "brickseq/attachment.hpp"
#include "brickseq/error.hpp"

namespace brickseq {

DecodeState DecodeState::start() {
  DecodeState s;
  s.push(Token::bos());
  return s;
}

void DecodeState::push(const Token& token) {
  cursor.push(token);
  tokens.push_back(token);
}

void DecodeState::push(std::span<const Token> ts) {
  for (const Token& t : ts) push(t);
}

DecodeState replay(std::span<const Token> prefix) {
  DecodeState s;
  s.push(prefix);
  return s;
}

std::string_view reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::kConnectorOutOfRange: return "ConnectorOutOfRange";
    case RejectReason::kSizeNotInLibrary: return "SizeNotInLibrary";
    case RejectReason::kAnchorOutOfRange: return "AnchorOutOfRange";
    case RejectReason::kNonMonotoneF: return "NonMonotoneF";
    case RejectReason::kOutOfBounds: return "OutOfBounds";
    case RejectReason::kCollision: return "Collision";
  }
  return "Unknown";
}

TupleCheck validate_tuple(const DecodeState& state, const ChildTuple& t) {
  const int p = state.current_parent();
  if (!state.cursor.at_boundary() || p < 0) {
    throw Error(ErrorCode::kInvalidArgument, "no open parent to attach a tuple to");
  }
  const Brick& parent = state.assembly()[static_cast<std::size_t>(p)];
  TupleCheck out;
  if (t.f < 0 || t.f >= connector_count(parent.size())) {
    out.reason = RejectReason::kConnectorOutOfRange;
  } else if (!is_catalog_size({t.h, t.w})) {
    out.reason = RejectReason::kSizeNotInLibrary;
  } else if (t.m < 0 || t.m >= t.h * t.w) {
    out.reason = RejectReason::kAnchorOutOfRange;
  } else if (t.f <= state.last_f()) {
    out.reason = RejectReason::kNonMonotoneF;
  }
  if (out.reason) return out;

  out.brick = decode_attachment(t.f, t.m, parent, {t.h, t.w});
  if (const auto why = state.assembly().check(out.brick)) {
    out.reason = why->reason == PlaceError::kCollision ? RejectReason::kCollision : RejectReason::kOutOfBounds;
  }
  return out;
}

void DecodeBudgets::validate() const {
  if (max_resamples_per_tuple <= 0 || max_rollbacks <= 0 || max_bricks <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "decode budgets must be positive");
  }
}

namespace {

TokenSequence finalize(const TokenSequence& prefix) {
  TokenSequence seq = prefix;
  while (!seq.empty() && seq.back().kind == TokenKind::kEop) seq.pop_back();
  seq.push_back(Token::eos());
  return seq;
}

std::array<Token, 5> header_tokens(const Brick& b) {
  return {Token::coord(b.x), Token::coord(b.y), Token::coord(b.z), Token::size(b.h), Token::size(b.w)};
}

std::array<Token, 4> tuple_tokens(const ChildTuple& t) {
  return {Token::connector(t.f), Token::size(t.h), Token::size(t.w), Token::anchor(t.m)};
}

void place_root(Policy& policy, const VoxelGrid& target, const DecodeBudgets& budgets, DecodeState& state,
                DecodeTrace& trace, Rng& rng) {
  for (int attempt = 0; attempt <= budgets.max_resamples_per_tuple; ++attempt) {
    const Brick root = policy.propose_root(target, rng);
    if (is_valid(root)) {
      state.push(header_tokens(root));
      return;
    }
    const auto reason = is_catalog_size(root.size()) ? RejectReason::kOutOfBounds : RejectReason::kSizeNotInLibrary;
    ++trace.rejected_reasons[static_cast<std::size_t>(reason)];
    ++trace.resamples;
  }
  throw Error(ErrorCode::kPolicyError, "policy " + policy.name() + " never proposed a valid root brick");
}

// Runs the body until EOS or the brick cap; returns the finished sequence.
TokenSequence complete(Policy& policy, const VoxelGrid& target, const DecodeBudgets& budgets, DecodeState& state,
                       DecodeTrace& trace, Rng& rng) {
  if (!state.has_root()) place_root(policy, target, budgets, state, trace, rng);
  std::vector<ChildTuple> rejected;
  while (state.current_parent() >= 0 && state.assembly().size() < static_cast<std::size_t>(budgets.max_bricks)) {
    rejected.clear();
    bool done = false;
    for (int attempt = 0; attempt <= budgets.max_resamples_per_tuple && !done; ++attempt) {
      const Action a = policy.propose({target, state, rejected}, rng);
      if (a.kind == Action::Kind::kEop) {
        state.push(Token::eop());
        done = true;
        break;
      }
      const TupleCheck check = validate_tuple(state, a.tuple);
      if (check.accepted()) {
        state.push(tuple_tokens(a.tuple));
        done = true;
        break;
      }
      ++trace.rejected_reasons[static_cast<std::size_t>(*check.reason)];
      ++trace.resamples;
      rejected.push_back(a.tuple);
    }
    if (!done) {
      state.push(Token::eop());
      ++trace.forced_eops;
    }
  }
  return finalize(state.tokens);
}

}  // namespace

GenerateResult generate(Policy& policy, const VoxelGrid& target, const DecodeBudgets& budgets,
                        const PhysicsParams& params, std::uint64_t seed) {
  budgets.validate();
  params.validate();
  Rng rng(seed);
  DecodeState state = DecodeState::start();
  GenerateResult best;
  bool have_best = false;
  DecodeTrace trace;

  while (true) {
    const TokenSequence sequence = complete(policy, target, budgets, state, trace, rng);
    GenerateResult attempt;
    attempt.assembly = state.assembly();
    attempt.sequence = sequence;
    attempt.report = stability_scores(attempt.assembly, params);
    attempt.stable = attempt.report.min_score() > 0.0;
    if (attempt.stable) {
      attempt.trace = trace;
      return attempt;
    }
    if (!have_best || attempt.report.min_score() > best.report.min_score()) {
      best = attempt;
      have_best = true;
    }
    if (trace.rollbacks >= static_cast<std::size_t>(budgets.max_rollbacks)) {
      best.trace = trace;
      best.exhausted = "rollbacks";
      return best;
    }
    DecodeState next = rollback(sequence, attempt.assembly, attempt.report);
    const auto& scores = attempt.report.scores;
    RollbackEvent ev;
    ev.from_length = sequence.size();
    ev.to_length = next.tokens.size();
    ev.unstable_brick = static_cast<int>(std::find(scores.begin(), scores.end(), 0.0) - scores.begin());
    ev.parent = state.cursor.state().parents[static_cast<std::size_t>(ev.unstable_brick)];
    trace.rollback_events.push_back(ev);
    ++trace.rollbacks;
    state = std::move(next);
    // A fresh stream per rollback keeps the failing continuation from repeating verbatim.
    rng = rng.split(trace.rollbacks);
  }
}

DecodeState rollback(std::span<const Token> sequence, const BrickAssembly& assembly, const StabilityReport& report) {
  const auto zero = std::find(report.scores.begin(), report.scores.end(), 0.0);
  if (zero == report.scores.end()) throw Error(ErrorCode::kNoUnstableBrick, "every brick has a positive score");
  if (report.scores.size() != assembly.size()) {
    throw Error(ErrorCode::kInconsistentSequence, "report and assembly sizes differ");
  }
  TreeCursor parsed;
  try {
    for (const Token& t : sequence) parsed.push(t);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInconsistentSequence, "sequence does not parse: " + std::string(e.what()));
  }
  const TreeCursor::State& full = parsed.state();
  if (!(full.assembly == assembly)) {
    throw Error(ErrorCode::kInconsistentSequence, "sequence does not decode to the given assembly");
  }

  const auto k = static_cast<std::size_t>(zero - report.scores.begin());
  const int p = full.parents[k];
  if (p <= 0) return DecodeState::start();

  // Rebuild the cursor state at the first token of brick p's tuple directly from the
  // parse records. Bricks are numbered in token order, so the survivors are [0, p).
  const auto up = static_cast<std::size_t>(p);
  const std::size_t cut = full.origins[up];
  const int g = full.parents[up];
  TreeCursor::State s;
  s.phase = CursorPhase::kBody;
  s.header_pos = 5;
  s.header = full.header;
  s.assembly = BrickAssembly(assembly.bricks().first(up));
  s.parents.assign(full.parents.begin(), full.parents.begin() + p);
  s.origins.assign(full.origins.begin(), full.origins.begin() + p);
  s.connectors.assign(full.connectors.begin(), full.connectors.begin() + p);
  s.current_parent = g;
  int first_child = p;
  while (first_child > 0 && full.parents[static_cast<std::size_t>(first_child - 1)] == g) --first_child;
  for (int j = first_child; j < p; ++j) s.group.push_back(j);
  s.last_f = s.group.empty() ? -1 : full.connectors[static_cast<std::size_t>(p - 1)];
  for (int j = g + 1; j < first_child; ++j) s.pending.push_back(j);
  s.consumed = cut;
  s.eop_count = static_cast<std::size_t>(
      std::count_if(sequence.begin(), sequence.begin() + static_cast<std::ptrdiff_t>(cut),
                    [](const Token& t) { return t.kind == TokenKind::kEop; }));

  DecodeState out;
  out.tokens.assign(sequence.begin(), sequence.begin() + static_cast<std::ptrdiff_t>(cut));
  out.cursor = TreeCursor(std::move(s));
  return out;
}

}  // namespace brickseq
