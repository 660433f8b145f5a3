#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace brickseq {

enum class TokenKind : std::uint8_t {
  kBos,
  kEos,
  kPad,
  kEop,
  kCoord,      // 0..19
  kSize,       // {1, 2, 4, 6, 8}
  kConnector,  // parent-side f, 0..23
  kAnchor,     // child-side m, 0..11
};

inline constexpr std::array<int, 5> kSizeValues = {1, 2, 4, 6, 8};
inline constexpr int kCodebookSize = 65;
inline constexpr int kBaselineCodebookSize = 28;

// Id layout: BOS=0 EOS=1 PAD=2 EOP=3, Coord 4..23, Size 24..28, F 29..52, M 53..64.
inline constexpr std::uint8_t kCoordBase = 4;
inline constexpr std::uint8_t kSizeBase = 24;
inline constexpr std::uint8_t kConnectorBase = 29;
inline constexpr std::uint8_t kAnchorBase = 53;

struct Token {
  TokenKind kind = TokenKind::kPad;
  int value = 0;

  static constexpr Token bos() { return {TokenKind::kBos, 0}; }
  static constexpr Token eos() { return {TokenKind::kEos, 0}; }
  static constexpr Token pad() { return {TokenKind::kPad, 0}; }
  static constexpr Token eop() { return {TokenKind::kEop, 0}; }
  static constexpr Token coord(int v) { return {TokenKind::kCoord, v}; }
  static constexpr Token size(int v) { return {TokenKind::kSize, v}; }
  static constexpr Token connector(int f) { return {TokenKind::kConnector, f}; }
  static constexpr Token anchor(int m) { return {TokenKind::kAnchor, m}; }

  /// True when the value lies in the range of its kind.
  bool valid() const;
  /// Codebook id. Throws Error(TokenOutOfRange) for invalid tokens.
  std::uint8_t id() const;
  static Token from_id(std::uint8_t id);

  auto operator<=>(const Token&) const = default;
};

using TokenSequence = std::vector<Token>;

struct CodebookEntry {
  std::uint8_t id;
  Token token;
  std::string name;
};

/// All 65 tokens of the tree tokenization, ids dense from 0.
std::vector<CodebookEntry> codebook();
/// The 28-token codebook of the flat (h, w, x, y, z) serialization: specials without
/// EOP, coordinates and sizes.
std::vector<CodebookEntry> baseline_codebook();

/// Whitespace-separated symbolic form, e.g. "BOS X5 Y0 Z0 H2 W4 F1 H1 W2 M0 EOS".
/// Coordinates are named X/Y/Z and sizes H/W by position.
std::string to_text(std::span<const Token> tokens);
/// Accepts the names produced by to_text (plus C<v> and S<v> aliases).
TokenSequence parse_text(std::string_view text);

/// Little-endian uint32 token count followed by one uint8 id per token.
std::vector<std::uint8_t> to_binary(std::span<const Token> tokens);
TokenSequence parse_binary(std::span<const std::uint8_t> bytes);

}  // namespace brickseq
