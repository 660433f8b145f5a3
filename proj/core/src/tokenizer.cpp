#include "brickseq/tokenizer.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "brickseq/attachment.hpp"
#include "brickseq/graph.hpp"

namespace brickseq {

namespace {

std::string token_name(const Token& t) { return to_text(std::span<const Token>(&t, 1)); }

[[noreturn]] void fail(ErrorCode code, std::size_t at, const std::string& what) {
  throw Error(code, "token " + std::to_string(at) + ": " + what);
}

}  // namespace

TokenSequence tokenize(const BrickAssembly& assembly) {
  if (assembly.empty()) throw Error(ErrorCode::kEmptyAssembly, "cannot tokenize an empty assembly");
  const AttachmentTree tree = build_spanning_tree(assembly);
  const Brick& root = assembly[static_cast<std::size_t>(tree.root)];

  TokenSequence s = {Token::bos(),        Token::coord(root.x), Token::coord(root.y),
                     Token::coord(root.z), Token::size(root.h),  Token::size(root.w)};
  s.reserve(6 + 5 * assembly.size());
  for (int p : tree.bfs_order) {
    const Brick& parent = assembly[static_cast<std::size_t>(p)];
    for (int c : tree.children[static_cast<std::size_t>(p)]) {
      const Brick& child = assembly[static_cast<std::size_t>(c)];
      const AttachmentCode code = encode_attachment(parent, child);
      s.push_back(Token::connector(code.f));
      s.push_back(Token::size(child.h));
      s.push_back(Token::size(child.w));
      s.push_back(Token::anchor(code.m));
    }
    s.push_back(Token::eop());
  }
  while (s.back().kind == TokenKind::kEop) s.pop_back();
  s.push_back(Token::eos());
  return s;
}

void TreeCursor::push(const Token& token) {
  if (!token.valid()) fail(ErrorCode::kTokenOutOfRange, state_.consumed, "invalid token value");
  switch (state_.phase) {
    case CursorPhase::kExpectBos:
      if (token.kind != TokenKind::kBos) {
        fail(ErrorCode::kMalformedHeader, state_.consumed, "expected BOS, got " + token_name(token));
      }
      state_.phase = CursorPhase::kHeader;
      break;
    case CursorPhase::kHeader:
      push_header(token);
      break;
    case CursorPhase::kBody:
      push_body(token);
      break;
    case CursorPhase::kFinished:
      if (token.kind != TokenKind::kPad) {
        fail(ErrorCode::kMalformedSequence, state_.consumed, token_name(token) + " after EOS");
      }
      break;
  }
  ++state_.consumed;
}

void TreeCursor::push_header(const Token& token) {
  const int pos = state_.header_pos;
  const TokenKind expected = pos < 3 ? TokenKind::kCoord : TokenKind::kSize;
  if (token.kind != expected) {
    fail(ErrorCode::kMalformedHeader, state_.consumed,
         "root header position " + std::to_string(pos) + " got " + token_name(token));
  }
  if (pos < 4) {
    state_.header[static_cast<std::size_t>(pos)] = token.value;
    ++state_.header_pos;
    return;
  }
  const auto& hd = state_.header;
  const Brick root{hd[3], token.value, hd[0], hd[1], hd[2]};
  if (!is_valid(root)) {
    fail(ErrorCode::kMalformedHeader, state_.consumed, "root brick is not a valid placement");
  }
  state_.header[4] = token.value;
  state_.header_pos = 5;
  state_.assembly.add(root);
  state_.parents.push_back(-1);
  state_.origins.push_back(1);
  state_.connectors.push_back(-1);
  state_.current_parent = 0;
  state_.phase = CursorPhase::kBody;
}

void TreeCursor::push_body(const Token& token) {
  const std::size_t at = state_.consumed;
  switch (state_.tuple_pos) {
    case 0:
      if (token.kind == TokenKind::kEos) {
        state_.phase = CursorPhase::kFinished;
        return;
      }
      if (token.kind != TokenKind::kEop && token.kind != TokenKind::kConnector) {
        fail(ErrorCode::kMalformedSequence, at, "expected F, EOP or EOS, got " + token_name(token));
      }
      if (state_.current_parent < 0) {
        fail(ErrorCode::kTuplesAfterQueueEmpty, at, token_name(token) + " with no parent left");
      }
      if (token.kind == TokenKind::kEop) {
        close_group();
        ++state_.eop_count;
        return;
      }
      state_.tuple.f = token.value;
      state_.tuple_pos = 1;
      return;
    case 1:
    case 2:
      if (token.kind != TokenKind::kSize) {
        fail(ErrorCode::kMalformedSequence, at, "expected a size token, got " + token_name(token));
      }
      (state_.tuple_pos == 1 ? state_.tuple.h : state_.tuple.w) = token.value;
      ++state_.tuple_pos;
      return;
    default:
      break;
  }

  if (token.kind != TokenKind::kAnchor) {
    fail(ErrorCode::kMalformedSequence, at, "expected an M token, got " + token_name(token));
  }
  ChildTuple t = state_.tuple;
  t.m = token.value;
  if (!is_catalog_size({t.h, t.w})) {
    fail(ErrorCode::kSizeNotInLibrary, at,
         std::to_string(t.h) + "x" + std::to_string(t.w) + " is not a catalog brick");
  }
  const int p = state_.current_parent;
  const Brick& parent = state_.assembly[static_cast<std::size_t>(p)];
  Brick child;
  try {
    child = decode_attachment(t.f, t.m, parent, {t.h, t.w});
  } catch (const Error& e) {
    fail(e.code(), at, e.detail());
  }
  if (auto why = state_.assembly.check(child)) {
    if (why->reason == PlaceError::kOutOfBounds) fail(ErrorCode::kOutOfBounds, at, "child leaves the workspace");
    fail(ErrorCode::kCollision, at,
         "child overlaps cell (" + std::to_string(why->cell.x) + "," + std::to_string(why->cell.y) +
             "," + std::to_string(why->cell.z) + ")");
  }
  if (state_.last_f >= 0 && t.f <= state_.last_f) {
    warnings_.push_back("token " + std::to_string(at - 3) + ": f=" + std::to_string(t.f) +
                        " does not increase within the group of brick " + std::to_string(p));
  }
  state_.assembly.add(child);
  state_.parents.push_back(p);
  state_.origins.push_back(at - 3);
  state_.connectors.push_back(t.f);
  state_.group.push_back(static_cast<int>(state_.assembly.size()) - 1);
  state_.last_f = t.f;
  state_.tuple_pos = 0;
  state_.tuple = {};
}

void TreeCursor::close_group() {
  for (int c : state_.group) state_.pending.push_back(c);
  state_.group.clear();
  state_.last_f = -1;
  if (state_.pending.empty()) {
    state_.current_parent = -1;
  } else {
    state_.current_parent = state_.pending.front();
    state_.pending.pop_front();
  }
}

DetokenizeResult detokenize(std::span<const Token> tokens, DetokenizeMode mode) {
  TreeCursor cursor;
  DetokenizeResult result;
  try {
    for (const Token& t : tokens) cursor.push(t);
    const auto& st = cursor.state();
    if (st.phase == CursorPhase::kExpectBos || st.phase == CursorPhase::kHeader) {
      throw Error(ErrorCode::kMalformedHeader, "sequence ends inside the root header");
    }
    if (st.phase == CursorPhase::kBody && st.tuple_pos != 0) {
      throw Error(ErrorCode::kMalformedSequence, "sequence ends inside a child tuple");
    }
    if (st.phase != CursorPhase::kFinished && mode == DetokenizeMode::kStrict) {
      throw Error(ErrorCode::kMalformedSequence, "missing EOS");
    }
  } catch (const Error& e) {
    if (mode == DetokenizeMode::kStrict) throw;
    result.error = e;
  }
  result.assembly = cursor.state().assembly;
  result.parents = cursor.state().parents;
  result.warnings = cursor.warnings();
  return result;
}

SequenceStats sequence_stats(std::span<const Token> tokens) {
  const DetokenizeResult parsed = detokenize(tokens, DetokenizeMode::kStrict);
  SequenceStats stats;
  stats.bricks = parsed.assembly.size();
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kEop) ++stats.eop_tokens;
    if (t.kind != TokenKind::kPad) ++stats.length;
  }
  const std::size_t n = stats.bricks;
  if (stats.length != 4 * n + stats.eop_tokens + 3 || stats.length > 5 * n + 2) {
    throw Error(ErrorCode::kMalformedSequence,
                "length " + std::to_string(stats.length) + " violates T = 4N+I+3 <= 5N+2 with N=" +
                    std::to_string(n) + ", I=" + std::to_string(stats.eop_tokens));
  }
  return stats;
}

TokenSequence flat_tokenize(const BrickAssembly& assembly) {
  std::vector<Brick> order(assembly.bricks().begin(), assembly.bricks().end());
  std::sort(order.begin(), order.end(), [](const Brick& a, const Brick& b) {
    return std::tie(a.z, a.y, a.x) < std::tie(b.z, b.y, b.x);
  });
  TokenSequence s{Token::bos()};
  for (const Brick& b : order) {
    s.insert(s.end(), {Token::size(b.h), Token::size(b.w), Token::coord(b.x), Token::coord(b.y),
                       Token::coord(b.z)});
  }
  s.push_back(Token::eos());
  return s;
}

}  // namespace brickseq
