#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace c2v::cparse {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntegerLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  Punctuator,
  Operator,
};

std::string_view to_string(TokenKind kind);

struct Position {
  int line = 1;
  int column = 1;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Token {
  TokenKind kind;
  std::string text;
  Position position;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenList = std::vector<Token>;

bool is_keyword(std::string_view word);

}  // namespace c2v::cparse
