#include "brickseq/token.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "brickseq/error.hpp"

namespace brickseq {

namespace {

int size_slot(int v) {
  const auto it = std::find(kSizeValues.begin(), kSizeValues.end(), v);
  return it == kSizeValues.end() ? -1 : static_cast<int>(it - kSizeValues.begin());
}

std::string plain_name(const Token& t) {
  switch (t.kind) {
    case TokenKind::kBos: return "BOS";
    case TokenKind::kEos: return "EOS";
    case TokenKind::kPad: return "PAD";
    case TokenKind::kEop: return "EOP";
    case TokenKind::kCoord: return "C" + std::to_string(t.value);
    case TokenKind::kSize: return "S" + std::to_string(t.value);
    case TokenKind::kConnector: return "F" + std::to_string(t.value);
    case TokenKind::kAnchor: return "M" + std::to_string(t.value);
  }
  return "?";
}

}  // namespace

bool Token::valid() const {
  switch (kind) {
    case TokenKind::kBos:
    case TokenKind::kEos:
    case TokenKind::kPad:
    case TokenKind::kEop: return value == 0;
    case TokenKind::kCoord: return value >= 0 && value < 20;
    case TokenKind::kSize: return size_slot(value) >= 0;
    case TokenKind::kConnector: return value >= 0 && value < 24;
    case TokenKind::kAnchor: return value >= 0 && value < 12;
  }
  return false;
}

std::uint8_t Token::id() const {
  if (!valid()) throw Error(ErrorCode::kTokenOutOfRange, "token " + plain_name(*this) + " has no id");
  switch (kind) {
    case TokenKind::kBos: return 0;
    case TokenKind::kEos: return 1;
    case TokenKind::kPad: return 2;
    case TokenKind::kEop: return 3;
    case TokenKind::kCoord: return static_cast<std::uint8_t>(kCoordBase + value);
    case TokenKind::kSize: return static_cast<std::uint8_t>(kSizeBase + size_slot(value));
    case TokenKind::kConnector: return static_cast<std::uint8_t>(kConnectorBase + value);
    case TokenKind::kAnchor: return static_cast<std::uint8_t>(kAnchorBase + value);
  }
  return 0;
}

Token Token::from_id(std::uint8_t id) {
  if (id == 0) return bos();
  if (id == 1) return eos();
  if (id == 2) return pad();
  if (id == 3) return eop();
  if (id < kSizeBase) return coord(id - kCoordBase);
  if (id < kConnectorBase) return size(kSizeValues[static_cast<std::size_t>(id - kSizeBase)]);
  if (id < kAnchorBase) return connector(id - kConnectorBase);
  if (id < kCodebookSize) return anchor(id - kAnchorBase);
  throw Error(ErrorCode::kTokenOutOfRange, "token id " + std::to_string(id) + " >= 65");
}

std::vector<CodebookEntry> codebook() {
  std::vector<CodebookEntry> table;
  table.reserve(kCodebookSize);
  for (int id = 0; id < kCodebookSize; ++id) {
    const Token t = Token::from_id(static_cast<std::uint8_t>(id));
    table.push_back({static_cast<std::uint8_t>(id), t, plain_name(t)});
  }
  return table;
}

std::vector<CodebookEntry> baseline_codebook() {
  std::vector<CodebookEntry> table;
  std::uint8_t id = 0;
  for (Token t : {Token::bos(), Token::eos(), Token::pad()}) table.push_back({id++, t, plain_name(t)});
  for (int v = 0; v < 20; ++v) table.push_back({id++, Token::coord(v), plain_name(Token::coord(v))});
  for (int v : kSizeValues) table.push_back({id++, Token::size(v), plain_name(Token::size(v))});
  return table;
}

std::string to_text(std::span<const Token> tokens) {
  static constexpr char kCoordNames[] = {'X', 'Y', 'Z'};
  static constexpr char kSizeNames[] = {'H', 'W'};
  std::string out;
  std::size_t coords = 0;
  std::size_t sizes = 0;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    if (t.kind == TokenKind::kCoord) {
      out += kCoordNames[coords++ % 3];
      out += std::to_string(t.value);
    } else if (t.kind == TokenKind::kSize) {
      out += kSizeNames[sizes++ % 2];
      out += std::to_string(t.value);
    } else {
      out += plain_name(t);
    }
  }
  return out;
}

TokenSequence parse_text(std::string_view text) {
  TokenSequence tokens;
  std::istringstream in{std::string(text)};
  std::string field;
  while (in >> field) {
    if (field == "BOS") { tokens.push_back(Token::bos()); continue; }
    if (field == "EOS") { tokens.push_back(Token::eos()); continue; }
    if (field == "PAD") { tokens.push_back(Token::pad()); continue; }
    if (field == "EOP") { tokens.push_back(Token::eop()); continue; }
    if (field.size() < 2) throw Error(ErrorCode::kParseError, "unknown token '" + field + "'");
    int value = 0;
    const char* first = field.data() + 1;
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::kParseError, "bad token value in '" + field + "'");
    }
    Token t;
    switch (field[0]) {
      case 'X': case 'Y': case 'Z': case 'C': t = Token::coord(value); break;
      case 'H': case 'W': case 'S': t = Token::size(value); break;
      case 'F': t = Token::connector(value); break;
      case 'M': t = Token::anchor(value); break;
      default: throw Error(ErrorCode::kParseError, "unknown token '" + field + "'");
    }
    if (!t.valid()) throw Error(ErrorCode::kTokenOutOfRange, "token '" + field + "' out of range");
    tokens.push_back(t);
  }
  return tokens;
}

std::vector<std::uint8_t> to_binary(std::span<const Token> tokens) {
  std::vector<std::uint8_t> out;
  out.reserve(tokens.size() + 4);
  const auto n = static_cast<std::uint32_t>(tokens.size());
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>((n >> shift) & 0xFFu));
  for (const Token& t : tokens) out.push_back(t.id());
  return out;
}

TokenSequence parse_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kParseError, "binary token stream shorter than its header");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  if (bytes.size() != 4 + static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kParseError, "binary token stream length mismatch: header says " +
                                            std::to_string(n) + ", payload has " +
                                            std::to_string(bytes.size() - 4));
  }
  TokenSequence tokens;
  tokens.reserve(n);
  for (std::size_t i = 4; i < bytes.size(); ++i) tokens.push_back(Token::from_id(bytes[i]));
  return tokens;
}

}  // namespace brickseq
