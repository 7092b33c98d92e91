#include "c2v/cparse/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "c2v/util/error.hpp"

namespace c2v::cparse {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::IntegerLiteral: return "integer_literal";
    case TokenKind::FloatLiteral: return "float_literal";
    case TokenKind::CharLiteral: return "char_literal";
    case TokenKind::StringLiteral: return "string_literal";
    case TokenKind::Punctuator: return "punctuator";
    case TokenKind::Operator: return "operator";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::string_view, 44> kKeywords = {
    "auto",     "break",    "case",     "char",       "const",
    "continue", "default",  "do",       "double",     "else",
    "enum",     "extern",   "float",    "for",        "goto",
    "if",       "inline",   "int",      "long",       "register",
    "restrict", "return",   "short",    "signed",     "sizeof",
    "static",   "struct",   "switch",   "typedef",    "union",
    "unsigned", "void",     "volatile", "while",      "_Bool",
    "_Complex", "_Alignas", "_Alignof", "_Atomic",    "_Noreturn",
    "_Static_assert", "_Thread_local", "__inline__", "__restrict",
};

// Longest first so maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 48> kOperators = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "*=",  "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##",
    "[",   "]",   "(",   ")",  "{",  "}",  ".",  "&",  "*",  "+",  "-",
    "~",   "!",   "/",   "%",  "<",  ">",  "^",  "|",  "?",  ":",  ";",
    "=",   ",",   "#",
};

bool is_punctuator(std::string_view op) {
  return op == "(" || op == ")" || op == "[" || op == "]" || op == "{" ||
         op == "}" || op == ";" || op == "," || op == "...";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenList run() {
    TokenList out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
      line_has_token_ = false;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, Position where) const {
    throw Error(ErrorKind::LexError, std::to_string(where.line) + ":" +
                                         std::to_string(where.column) + ": " +
                                         what);
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == '\\' && (peek(1) == '\n' ||
                        (peek(1) == '\r' && peek(2) == '\n'))) {
        advance();
        if (peek() == '\r') advance();
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') {
          if (peek() == '\\' && peek(1) == '\n') advance();
          advance();
        }
      } else if (c == '/' && peek(1) == '*') {
        Position start{line_, column_};
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) fail("unterminated comment", start);
          advance();
        }
        advance();
        advance();
      } else if (c == '#' && !line_has_token_) {
        skip_directive();
      } else {
        return;
      }
    }
  }

  void skip_directive() {
    while (!at_end()) {
      const char c = peek();
      if (c == '\n') return;
      if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
        advance();
        if (peek() == '\r') advance();
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (!at_end()) {
          advance();
          advance();
        }
        continue;
      }
      advance();
    }
  }

  Token next_token() {
    Position start{line_, column_};
    line_has_token_ = true;
    const std::size_t begin = pos_;
    char c = peek();

    // Encoding prefixes on string and char literals.
    std::size_t prefix = 0;
    if (c == 'L' || c == 'U' || c == 'u') {
      prefix = (c == 'u' && peek(1) == '8') ? 2 : 1;
      if (peek(prefix) != '"' && peek(prefix) != '\'') prefix = 0;
    }
    if (prefix > 0 || c == '"' || c == '\'') {
      for (std::size_t i = 0; i < prefix; ++i) advance();
      const char quote = peek();
      lex_quoted(quote, start);
      return {quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral,
              std::string(src_.substr(begin, pos_ - begin)), start};
    }

    if (ident_start(c)) {
      while (!at_end() && ident_char(peek())) advance();
      std::string word(src_.substr(begin, pos_ - begin));
      return {is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier,
              std::move(word), start};
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number(start);
    }

    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return {is_punctuator(op) ? TokenKind::Punctuator : TokenKind::Operator,
                std::string(op), start};
      }
    }
    char hex[8];
    std::snprintf(hex, sizeof hex, "0x%02x", static_cast<unsigned char>(c));
    fail(std::string("illegal character ") + hex, start);
  }

  void lex_quoted(char quote, Position start) {
    advance();  // opening quote
    while (true) {
      if (at_end() || peek() == '\n') {
        fail(quote == '"' ? "unterminated string literal"
                          : "unterminated character literal",
             start);
      }
      char c = peek();
      if (c == '\\') {
        advance();
        if (at_end()) continue;
        if (peek() == '\r' && peek(1) == '\n') advance();
        advance();
        continue;
      }
      advance();
      if (c == quote) return;
    }
  }

  Token lex_number(Position start) {
    const std::size_t begin = pos_;
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        if (peek() == '.') is_float = true;
        advance();
      }
      if (peek() == 'p' || peek() == 'P') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        if (peek() == '.') is_float = true;
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        char sign = peek(1);
        bool exp_digits =
            std::isdigit(static_cast<unsigned char>(sign)) ||
            ((sign == '+' || sign == '-') &&
             std::isdigit(static_cast<unsigned char>(peek(2))));
        if (exp_digits) {
          is_float = true;
          advance();
          if (peek() == '+' || peek() == '-') advance();
          while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
      }
    }
    // Suffixes (u, l, f and combinations); anything else alphanumeric glued
    // on is kept so the lexeme round-trips.
    while (!at_end() && ident_char(peek())) {
      char s = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
      if (s == 'f' && !(src_[begin] == '0' && (src_.size() > begin + 1) &&
                        (src_[begin + 1] == 'x' || src_[begin + 1] == 'X'))) {
        is_float = true;
      }
      advance();
    }
    return {is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral,
            std::string(src_.substr(begin, pos_ - begin)), start};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool line_has_token_ = false;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenList tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace c2v::cparse
