#include "c2v/cparse/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "c2v/cparse/lexer.hpp"
#include "c2v/cparse/node_kinds.hpp"
#include "c2v/util/error.hpp"

namespace c2v::cparse {

namespace {

constexpr std::array<std::string_view, 9> kStorageWords = {
    "static", "extern", "inline", "__inline__", "__inline",
    "register", "auto", "_Noreturn", "_Thread_local",
};

constexpr std::array<std::string_view, 6> kQualifierWords = {
    "const", "volatile", "restrict", "__restrict", "__restrict__", "_Atomic",
};

constexpr std::array<std::string_view, 11> kBaseTypeWords = {
    "void", "char", "short", "int", "long", "float",
    "double", "signed", "unsigned", "_Bool", "_Complex",
};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& words, std::string_view w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

bool is_storage(const Token& t) {
  return (t.kind == TokenKind::Keyword || t.kind == TokenKind::Identifier) &&
         contains(kStorageWords, t.text);
}
bool is_qualifier(const Token& t) {
  return (t.kind == TokenKind::Keyword || t.kind == TokenKind::Identifier) &&
         contains(kQualifierWords, t.text);
}
bool is_base_type(const Token& t) {
  return t.kind == TokenKind::Keyword && contains(kBaseTypeWords, t.text);
}
bool is_tag_keyword(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         (t.text == "struct" || t.text == "union" || t.text == "enum");
}
bool is_type_keyword(const Token& t) {
  return is_storage(t) || is_qualifier(t) || is_base_type(t) ||
         is_tag_keyword(t);
}
bool is_attribute(const Token& t) {
  return t.kind == TokenKind::Identifier &&
         (t.text == "__attribute__" || t.text == "__attribute");
}

std::string_view binary_name(std::string_view glyph) {
  for (const auto& op : kinds::kBinaryOperators) {
    if (op.glyph == glyph) return op.name;
  }
  return {};
}

std::string_view unary_name(std::string_view glyph) {
  for (const auto& op : kinds::kUnaryOperators) {
    if (op.glyph == glyph) return op.name;
  }
  return {};
}

bool is_assignment_op(const Token& t) {
  if (t.kind != TokenKind::Operator) return false;
  return t.text == "=" || t.text == "+=" || t.text == "-=" || t.text == "*=" ||
         t.text == "/=" || t.text == "%=" || t.text == "<<=" ||
         t.text == ">>=" || t.text == "&=" || t.text == "|=" || t.text == "^=";
}

int binary_precedence(const Token& t) {
  if (t.kind != TokenKind::Operator) return -1;
  const std::string& s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "|") return 3;
  if (s == "^") return 4;
  if (s == "&") return 5;
  if (s == "==" || s == "!=") return 6;
  if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
  if (s == "<<" || s == ">>") return 8;
  if (s == "+" || s == "-") return 9;
  if (s == "*" || s == "/" || s == "%") return 10;
  return -1;
}

std::string with_op(std::string_view kind, std::string_view op_name) {
  std::string out(kind);
  out += ':';
  out += op_name;
  return out;
}

// Joins type tokens into one terminal value. Stars are glued to the
// preceding token, everything else is separated by '|' since C2V values
// may not contain spaces.
class TypeText {
 public:
  void add(std::string_view word) {
    if (!text_.empty() && word != "*" && word != "[]" && word != "(*)") {
      text_ += '|';
    }
    text_ += word;
  }
  bool empty() const { return text_.empty(); }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

class Parser {
 public:
  explicit Parser(const TokenList& tokens) : toks_(tokens) {}

  Ast parse() {
    if (toks_.empty()) parse_error("empty input");
    Ast ast{parse_function_def()};
    if (!at_end()) parse_error("unexpected tokens after function body");
    return ast;
  }

 private:
  // --- token helpers -------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }

  const Token& tok(std::size_t ahead = 0) const {
    static const Token kEof{TokenKind::Punctuator, "<eof>", {0, 0}};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : kEof;
  }

  bool at(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = tok(ahead);
    return t.kind != TokenKind::StringLiteral &&
           t.kind != TokenKind::CharLiteral && t.text == text &&
           pos_ + ahead < toks_.size();
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(std::string_view text) {
    if (!at(text)) {
      parse_error("expected '" + std::string(text) + "' but found '" +
                  tok().text + "'");
    }
    return toks_[pos_++];
  }

  std::string where() const {
    const Position p = at_end() ? (toks_.empty() ? Position{} : toks_.back().position)
                                : tok().position;
    return std::to_string(p.line) + ":" + std::to_string(p.column) + ": ";
  }

  [[noreturn]] void parse_error(const std::string& what) const {
    throw Error(ErrorKind::ParseError, where() + what);
  }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw Error(ErrorKind::ParseUnsupported, where() + what);
  }

  // Index of the token matching the opener at `open`.
  std::size_t matching(std::size_t open) const {
    const std::string& o = toks_[open].text;
    const std::string c = o == "(" ? ")" : o == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind != TokenKind::Punctuator) continue;
      if (t.text == o) ++depth;
      if (t.text == c && --depth == 0) return i;
    }
    throw Error(ErrorKind::ParseError, "unbalanced '" + o + "' at " +
                                           std::to_string(toks_[open].position.line) +
                                           ":" +
                                           std::to_string(toks_[open].position.column));
  }

  void skip_attribute() {
    // __attribute__((...))
    ++pos_;
    if (!at("(")) parse_error("expected '(' after __attribute__");
    pos_ = matching(pos_) + 1;
  }

  // --- function definitions -------------------------------------------------

  AstNode parse_function_def() {
    // Header runs up to the first '{' outside parentheses.
    std::size_t brace = 0;
    int depth = 0;
    for (std::size_t i = 0;; ++i) {
      if (i >= toks_.size()) {
        pos_ = toks_.size();
        parse_error("no function body found");
      }
      const Token& t = toks_[i];
      if (t.kind != TokenKind::Punctuator) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")") --depth;
      if (depth == 0 && t.text == ";") {
        pos_ = i;
        unsupported("declaration before body (prototype or K&R parameter list)");
      }
      if (depth == 0 && t.text == "{") {
        brace = i;
        break;
      }
    }
    if (brace == 0 || toks_[brace - 1].text != ")") {
      pos_ = brace;
      unsupported("function header does not end with a parameter list");
    }

    std::size_t params_close = brace - 1;
    std::size_t params_open = open_of(params_close);
    // Trailing attributes: f(int x) __attribute__((unused)) { ... }
    while (params_open >= 2 && is_attribute(toks_[params_open - 1]) &&
           toks_[params_open - 2].text == ")") {
      params_close = params_open - 2;
      params_open = open_of(params_close);
    }
    if (params_open == 0) {
      pos_ = 0;
      parse_error("function header has no name");
    }

    std::vector<AstNode> children;

    // Name, possibly wrapped by a macro such as HELPER(shr_cc).
    std::size_t name_end = params_open;  // one past the last name token
    std::size_t name_begin = params_open - 1;
    std::string name;
    if (toks_[name_begin].text == ")" &&
        toks_[name_begin].kind == TokenKind::Punctuator) {
      std::size_t inner_open = open_of(name_begin);
      if (inner_open == 0 || toks_[inner_open - 1].kind != TokenKind::Identifier) {
        pos_ = inner_open;
        unsupported("function declarator is not a plain or macro-wrapped name");
      }
      name_begin = inner_open - 1;
      for (std::size_t i = name_begin; i < name_end; ++i) {
        if (toks_[i].kind == TokenKind::Operator && toks_[i].text == "*") {
          pos_ = i;
          unsupported("function returning a function pointer");
        }
        name += toks_[i].text;
      }
    } else if (toks_[name_begin].kind == TokenKind::Identifier) {
      name = toks_[name_begin].text;
    } else {
      pos_ = name_begin;
      parse_error("expected function name before parameter list");
    }

    TypeText return_type;
    for (std::size_t i = 0; i < name_begin; ++i) {
      const Token& t = toks_[i];
      if (is_storage(t)) continue;
      if (is_attribute(t)) {
        pos_ = i;
        skip_attribute();
        i = pos_ - 1;
        continue;
      }
      if (t.kind != TokenKind::Identifier && t.kind != TokenKind::Keyword &&
          t.text != "*") {
        pos_ = i;
        parse_error("unexpected '" + t.text + "' in return type");
      }
      return_type.add(t.text);
    }
    if (!return_type.empty()) {
      children.push_back(make_terminal(std::string(kinds::TypeName), return_type.str()));
    }
    children.push_back(make_terminal(std::string(kinds::FunctionName), name));

    auto params = parse_parameters(params_open, params_close);
    if (!params.empty()) {
      children.push_back(make_node(std::string(kinds::ParameterList), std::move(params)));
    }

    pos_ = brace;
    auto body = parse_block();
    if (!body) {
      pos_ = brace;
      unsupported("function body is empty");
    }
    children.push_back(std::move(*body));
    return make_node(std::string(kinds::FunctionDef), std::move(children));
  }

  std::size_t open_of(std::size_t close) const {
    const std::string& c = toks_[close].text;
    const std::string o = c == ")" ? "(" : c == "]" ? "[" : "{";
    int depth = 0;
    for (std::size_t i = close + 1; i-- > 0;) {
      const Token& t = toks_[i];
      if (t.kind != TokenKind::Punctuator) continue;
      if (t.text == c) ++depth;
      if (t.text == o && --depth == 0) return i;
    }
    throw Error(ErrorKind::ParseError, "unbalanced '" + c + "'");
  }

  std::vector<AstNode> parse_parameters(std::size_t open, std::size_t close) {
    std::vector<AstNode> params;
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t start = open + 1;
    int depth = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Punctuator) {
        if (t.text == "(" || t.text == "[") ++depth;
        if (t.text == ")" || t.text == "]") --depth;
        if (depth == 0 && t.text == ",") {
          groups.emplace_back(start, i);
          start = i + 1;
        }
      }
    }
    if (start < close) groups.emplace_back(start, close);
    if (groups.size() == 1 && groups[0].second - groups[0].first == 1 &&
        toks_[groups[0].first].text == "void") {
      return params;
    }
    for (auto [b, e] : groups) {
      if (b == e) {
        pos_ = b;
        parse_error("empty parameter");
      }
      params.push_back(parse_parameter(b, e));
    }
    return params;
  }

  AstNode parse_parameter(std::size_t b, std::size_t e) {
    if (e - b == 1 && toks_[b].text == "...") {
      return make_terminal(std::string(kinds::VariadicParameter), "...");
    }
    TypeText type;
    std::optional<std::string> name;

    // Function-pointer parameter: ret (*name)(args)
    for (std::size_t i = b; i + 1 < e; ++i) {
      if (toks_[i].text == "(" && toks_[i + 1].text == "*") {
        for (std::size_t j = b; j < i; ++j) {
          if (!is_storage(toks_[j])) type.add(toks_[j].text);
        }
        type.add("(*)");
        if (i + 2 < e && toks_[i + 2].kind == TokenKind::Identifier) {
          name = toks_[i + 2].text;
        }
        std::vector<AstNode> children;
        children.push_back(make_terminal(std::string(kinds::TypeName), type.str()));
        if (name) children.push_back(make_terminal(std::string(kinds::ParamName), *name));
        return make_node(std::string(kinds::Parameter), std::move(children));
      }
    }

    std::size_t end = e;
    bool array = false;
    while (end > b && toks_[end - 1].text == "]") {
      std::size_t open = open_of(end - 1);
      if (open < b) break;
      end = open;
      array = true;
    }
    if (end - b >= 2 && toks_[end - 1].kind == TokenKind::Identifier &&
        !is_qualifier(toks_[end - 1]) && !is_tag_keyword(toks_[end - 2])) {
      name = toks_[end - 1].text;
      --end;
    }
    for (std::size_t i = b; i < end; ++i) {
      const Token& t = toks_[i];
      if (is_storage(t)) continue;
      if (t.kind != TokenKind::Identifier && t.kind != TokenKind::Keyword &&
          t.text != "*") {
        pos_ = i;
        unsupported("unsupported parameter declarator near '" + t.text + "'");
      }
      type.add(t.text);
    }
    if (array) type.add("[]");
    std::vector<AstNode> children;
    if (!type.empty()) {
      children.push_back(make_terminal(std::string(kinds::TypeName), type.str()));
    }
    if (name) children.push_back(make_terminal(std::string(kinds::ParamName), *name));
    if (children.empty()) {
      pos_ = b;
      parse_error("parameter without type or name");
    }
    return make_node(std::string(kinds::Parameter), std::move(children));
  }

  // --- statements -------------------------------------------------------------

  // Returns nullopt for statements with nothing to represent (";", "{}").
  std::optional<AstNode> parse_block() {
    expect("{");
    std::vector<AstNode> stmts;
    while (!at("}")) {
      if (at_end()) parse_error("unterminated block");
      if (auto s = parse_statement()) stmts.push_back(std::move(*s));
    }
    expect("}");
    if (stmts.empty()) return std::nullopt;
    return make_node(std::string(kinds::Block), std::move(stmts));
  }

  std::optional<AstNode> parse_statement() {
    const Token& t = tok();
    if (at("{")) return parse_block();
    if (accept(";")) return std::nullopt;

    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") return parse_if();
      if (t.text == "while") return parse_while();
      if (t.text == "do") return parse_do();
      if (t.text == "for") return parse_for();
      if (t.text == "switch") return parse_switch();
      if (t.text == "return") return parse_return();
      if (t.text == "break" || t.text == "continue") {
        ++pos_;
        expect(";");
        return make_terminal(std::string(t.text == "break" ? kinds::BreakStmt
                                                           : kinds::ContinueStmt),
                             t.text);
      }
      if (t.text == "case") return parse_case();
      if (t.text == "default") {
        ++pos_;
        expect(":");
        return make_terminal(std::string(kinds::DefaultStmt), "default");
      }
      if (t.text == "goto") {
        ++pos_;
        if (tok().kind != TokenKind::Identifier) unsupported("computed goto");
        std::string label = toks_[pos_++].text;
        expect(";");
        return make_node(std::string(kinds::GotoStmt),
                         {make_terminal(std::string(kinds::LabelName), label)});
      }
      if (t.text == "typedef") unsupported("typedef inside function body");
      if (t.text == "else") parse_error("'else' without 'if'");
    }

    if (t.kind == TokenKind::Identifier) {
      if (t.text == "asm" || t.text == "__asm__" || t.text == "__asm") {
        unsupported("inline assembly");
      }
      if (tok(1).text == ":" && tok(1).kind == TokenKind::Operator) {
        std::string label = t.text;
        pos_ += 2;
        return make_node(std::string(kinds::LabeledStmt),
                         {make_terminal(std::string(kinds::LabelName), label)});
      }
    }

    if (starts_declaration()) return parse_declaration();
    return parse_expression_statement();
  }

  bool starts_declaration() const {
    const Token& t = tok();
    if (is_type_keyword(t) || is_attribute(t)) return true;
    if (t.kind != TokenKind::Identifier) return false;
    // T x ...
    const Token& next = tok(1);
    if (next.kind == TokenKind::Identifier && !is_attribute(next)) {
      const Token& after = tok(2);
      // "T x;" "T x =" "T x," "T x[" are declarations; "MACRO x(..." is not.
      return after.text == ";" || after.text == "=" || after.text == "," ||
             after.text == "[" || is_attribute(after);
    }
    if (is_qualifier(next)) return true;
    // T *x; T **x = ...;
    std::size_t i = 1;
    if (tok(i).text != "*") return false;
    while (tok(i).text == "*" || is_qualifier(tok(i))) ++i;
    if (tok(i).kind != TokenKind::Identifier) return false;
    const Token& after = tok(i + 1);
    return after.text == ";" || after.text == "=" || after.text == "," ||
           after.text == "[";
  }

  // Parses specifiers and qualifiers; stops at the first token that cannot
  // continue the type.
  TypeText parse_specifiers() {
    TypeText type;
    bool have_base = false;
    while (!at_end()) {
      const Token& t = tok();
      if (is_storage(t)) {
        ++pos_;
      } else if (is_attribute(t)) {
        skip_attribute();
      } else if (is_qualifier(t)) {
        type.add(t.text);
        ++pos_;
      } else if (is_base_type(t)) {
        type.add(t.text);
        have_base = true;
        ++pos_;
      } else if (is_tag_keyword(t)) {
        type.add(t.text);
        ++pos_;
        if (at("{")) unsupported("type definition inside function body");
        if (tok().kind != TokenKind::Identifier) parse_error("expected tag name");
        type.add(tok().text);
        ++pos_;
        if (at("{")) unsupported("type definition inside function body");
        have_base = true;
      } else if (t.kind == TokenKind::Identifier && !have_base) {
        type.add(t.text);
        have_base = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (type.empty()) parse_error("expected a type");
    return type;
  }

  int parse_stars() {
    int stars = 0;
    while (true) {
      if (accept("*")) {
        ++stars;
      } else if (is_qualifier(tok())) {
        ++pos_;
      } else {
        return stars;
      }
    }
  }

  AstNode parse_declaration() {
    TypeText base = parse_specifiers();
    std::vector<AstNode> declarators;
    std::optional<std::string> first_type;
    while (true) {
      const int stars = parse_stars();
      if (at("(")) unsupported("function-pointer or parenthesized declarator");
      if (tok().kind != TokenKind::Identifier) {
        parse_error("expected declarator name, found '" + tok().text + "'");
      }
      if (!first_type) {
        TypeText t = base;
        for (int i = 0; i < stars; ++i) t.add("*");
        first_type = t.str();
      }
      std::vector<AstNode> parts;
      parts.push_back(make_terminal(std::string(kinds::DeclName), toks_[pos_++].text));
      while (accept("[")) {
        if (accept("]")) continue;
        AstNode dim = parse_expression();
        expect("]");
        parts.push_back(make_node(std::string(kinds::ArrayDim), {std::move(dim)}));
      }
      if (at("(")) unsupported("function declaration inside function body");
      if (at(":")) unsupported("bit-field declarator");
      while (is_attribute(tok())) skip_attribute();
      if (accept("=")) parts.push_back(parse_initializer());
      declarators.push_back(
          make_node(std::string(kinds::VariableDeclarator), std::move(parts)));
      if (accept(",")) continue;
      expect(";");
      break;
    }
    std::vector<AstNode> children;
    children.push_back(make_terminal(std::string(kinds::TypeName), *first_type));
    for (auto& d : declarators) children.push_back(std::move(d));
    return make_node(std::string(kinds::DeclStmt), std::move(children));
  }

  AstNode parse_initializer() {
    if (!at("{")) return parse_assignment();
    ++pos_;
    std::vector<AstNode> items;
    while (!at("}")) {
      if (at(".") || at("[")) unsupported("designated initializer");
      items.push_back(parse_initializer());
      if (!accept(",")) break;
    }
    expect("}");
    if (items.empty()) return make_terminal(std::string(kinds::EmptyInitializer), "{}");
    return make_node(std::string(kinds::InitializerList), std::move(items));
  }

  AstNode parse_paren_condition() {
    expect("(");
    AstNode cond = parse_expression();
    expect(")");
    return cond;
  }

  AstNode parse_if() {
    ++pos_;
    std::vector<AstNode> children;
    children.push_back(parse_paren_condition());
    if (auto then = parse_statement()) children.push_back(std::move(*then));
    if (accept("else")) {
      if (auto other = parse_statement()) children.push_back(std::move(*other));
    }
    return make_node(std::string(kinds::IfStmt), std::move(children));
  }

  AstNode parse_while() {
    ++pos_;
    std::vector<AstNode> children;
    children.push_back(parse_paren_condition());
    if (auto body = parse_statement()) children.push_back(std::move(*body));
    return make_node(std::string(kinds::WhileStmt), std::move(children));
  }

  AstNode parse_do() {
    ++pos_;
    std::vector<AstNode> children;
    if (auto body = parse_statement()) children.push_back(std::move(*body));
    expect("while");
    children.push_back(parse_paren_condition());
    expect(";");
    return make_node(std::string(kinds::DoStmt), std::move(children));
  }

  AstNode parse_for() {
    ++pos_;
    expect("(");
    std::vector<AstNode> children;
    if (!accept(";")) {
      AstNode init = starts_declaration() ? parse_declaration()
                                          : [&] {
                                              AstNode e = parse_expression();
                                              expect(";");
                                              return e;
                                            }();
      children.push_back(make_node(std::string(kinds::ForInit), {std::move(init)}));
    }
    if (!accept(";")) {
      children.push_back(make_node(std::string(kinds::ForCond), {parse_expression()}));
      expect(";");
    }
    if (!accept(")")) {
      children.push_back(make_node(std::string(kinds::ForUpdate), {parse_expression()}));
      expect(")");
    }
    if (auto body = parse_statement()) children.push_back(std::move(*body));
    if (children.empty()) {
      // for (;;) ; carries nothing but the loop itself.
      return make_terminal(std::string(kinds::ForStmt), "for");
    }
    return make_node(std::string(kinds::ForStmt), std::move(children));
  }

  AstNode parse_switch() {
    ++pos_;
    std::vector<AstNode> children;
    children.push_back(parse_paren_condition());
    if (auto body = parse_statement()) children.push_back(std::move(*body));
    return make_node(std::string(kinds::SwitchStmt), std::move(children));
  }

  AstNode parse_case() {
    ++pos_;
    AstNode value = parse_conditional();
    if (at("...")) unsupported("case range");
    expect(":");
    return make_node(std::string(kinds::CaseStmt), {std::move(value)});
  }

  AstNode parse_return() {
    ++pos_;
    if (accept(";")) return make_terminal(std::string(kinds::ReturnStmt), "return");
    AstNode value = parse_expression();
    expect(";");
    return make_node(std::string(kinds::ReturnStmt), {std::move(value)});
  }

  AstNode parse_expression_statement() {
    AstNode expr = parse_expression();
    if (accept(";")) {
      return make_node(std::string(kinds::ExpressionStmt), {std::move(expr)});
    }
    if (expr.kind == kinds::CallExpr) {
      // Iterator macros: QTAILQ_FOREACH(var, head, field) { ... }
      if (at("{")) {
        std::vector<AstNode> children;
        children.push_back(std::move(expr));
        if (auto body = parse_block()) children.push_back(std::move(*body));
        return make_node(std::string(kinds::MacroBlockStmt), std::move(children));
      }
      // Statement-like macro invoked without a trailing semicolon.
      const Token& prev = toks_[pos_ - 1];
      if (!at_end() && tok().position.line > prev.position.line) {
        return make_node(std::string(kinds::ExpressionStmt), {std::move(expr)});
      }
    }
    parse_error("expected ';' but found '" + tok().text + "'");
  }

  // --- expressions ------------------------------------------------------------

  AstNode parse_expression() {
    AstNode first = parse_assignment();
    if (!at(",")) return first;
    std::vector<AstNode> items;
    items.push_back(std::move(first));
    while (accept(",")) items.push_back(parse_assignment());
    return make_node(std::string(kinds::CommaExpr), std::move(items));
  }

  AstNode parse_assignment() {
    AstNode lhs = parse_conditional();
    if (!is_assignment_op(tok())) return lhs;
    const std::string op = toks_[pos_++].text;
    AstNode rhs = parse_assignment();
    std::string kind = op == "=" ? std::string(kinds::AssignExpr)
                                 : with_op(kinds::AssignExpr, binary_name(op));
    return make_node(std::move(kind), {std::move(lhs), std::move(rhs)});
  }

  AstNode parse_conditional() {
    AstNode cond = parse_binary(1);
    if (!accept("?")) return cond;
    if (at(":")) unsupported("GNU conditional with omitted operand");
    AstNode then = parse_expression();
    expect(":");
    AstNode other = parse_conditional();
    return make_node(std::string(kinds::ConditionalExpr),
                     {std::move(cond), std::move(then), std::move(other)});
  }

  AstNode parse_binary(int min_prec) {
    AstNode lhs = parse_unary();
    while (true) {
      const int prec = binary_precedence(tok());
      if (prec < min_prec) return lhs;
      const std::string op = toks_[pos_++].text;
      AstNode rhs = parse_binary(prec + 1);
      lhs = make_node(with_op(kinds::BinaryExpr, binary_name(op)),
                      {std::move(lhs), std::move(rhs)});
    }
  }

  // True when the '(' at the current position opens a type name.
  bool paren_starts_type() const {
    const Token& t = tok(1);
    if (is_type_keyword(t)) return true;
    if (t.kind != TokenKind::Identifier) return false;
    std::size_t i = 2;
    bool stars = false;
    while (tok(i).text == "*" || is_qualifier(tok(i))) {
      stars = stars || tok(i).text == "*";
      ++i;
    }
    if (tok(i).text != ")" || tok(i).kind != TokenKind::Punctuator) return false;
    if (stars) return true;
    // (ident) followed by something that can only start an operand.
    const Token& after = tok(i + 1);
    switch (after.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return after.text == "sizeof";
      default:
        break;
    }
    if (after.text == "!" || after.text == "~") return true;
    const std::string& name = t.text;
    const bool type_like = name.size() > 2 && name.ends_with("_t");
    return type_like && (after.text == "(" || after.text == "-" ||
                         after.text == "*" || after.text == "&" ||
                         after.text == "+");
  }

  // Type name inside parentheses (cast, sizeof, or macro argument).
  std::string parse_type_name() {
    TypeText type = parse_specifiers();
    const int stars = parse_stars();
    for (int i = 0; i < stars; ++i) type.add("*");
    if (at("(")) unsupported("function-pointer type name");
    while (accept("[")) {
      if (!at("]")) parse_expression();
      expect("]");
      type.add("[]");
    }
    return type.str();
  }

  AstNode parse_unary() {
    const Token& t = tok();
    if (t.kind == TokenKind::Operator) {
      if (t.text == "++" || t.text == "--") {
        const std::string op = toks_[pos_++].text;
        AstNode operand = parse_unary();
        return make_node(with_op(kinds::UnaryExpr, unary_name(op)), {std::move(operand)});
      }
      if (t.text == "+" || t.text == "-" || t.text == "!" || t.text == "~" ||
          t.text == "*" || t.text == "&") {
        const std::string op = toks_[pos_++].text;
        AstNode operand = parse_unary();
        return make_node(with_op(kinds::UnaryExpr, unary_name(op)), {std::move(operand)});
      }
      if (t.text == "&&") unsupported("address of label");
    }
    if (t.kind == TokenKind::Keyword && t.text == "sizeof") {
      ++pos_;
      if (at("(") && paren_starts_type()) {
        ++pos_;
        std::string type = parse_type_name();
        expect(")");
        return make_node(std::string(kinds::SizeofExpr),
                         {make_terminal(std::string(kinds::TypeName), type)});
      }
      return make_node(std::string(kinds::SizeofExpr), {parse_unary()});
    }
    if (at("(") && paren_starts_type()) {
      ++pos_;
      std::string type = parse_type_name();
      expect(")");
      if (at("{")) unsupported("compound literal");
      AstNode operand = parse_unary();
      return make_node(std::string(kinds::CastExpr),
                       {make_terminal(std::string(kinds::TypeName), type),
                        std::move(operand)});
    }
    return parse_postfix();
  }

  AstNode parse_postfix() {
    AstNode expr = parse_primary();
    while (true) {
      if (accept("[")) {
        AstNode index = parse_expression();
        expect("]");
        expr = make_node(std::string(kinds::ArrayAccessExpr),
                         {std::move(expr), std::move(index)});
      } else if (accept("(")) {
        std::vector<AstNode> children;
        children.push_back(std::move(expr));
        if (!at(")")) {
          while (true) {
            children.push_back(parse_argument());
            if (!accept(",")) break;
          }
        }
        expect(")");
        expr = make_node(std::string(kinds::CallExpr), std::move(children));
      } else if (at(".") || at("->")) {
        const bool arrow = at("->");
        ++pos_;
        if (tok().kind != TokenKind::Identifier) {
          parse_error("expected field name after '" + std::string(arrow ? "->" : ".") + "'");
        }
        AstNode field = make_terminal(std::string(kinds::FieldName), toks_[pos_++].text);
        expr = make_node(std::string(arrow ? kinds::PointerAccessExpr
                                           : kinds::FieldAccessExpr),
                         {std::move(expr), std::move(field)});
      } else if (at("++") || at("--")) {
        const std::string op = toks_[pos_++].text;
        expr = make_node(with_op(kinds::PostfixExpr, unary_name(op)), {std::move(expr)});
      } else {
        return expr;
      }
    }
  }

  // Macro-style calls may pass type names: va_arg(ap, int), offsetof(struct S, f).
  AstNode parse_argument() {
    if (is_type_keyword(tok()) && !is_storage(tok())) {
      std::size_t save = pos_;
      std::string type = parse_type_name();
      if (at(",") || at(")")) {
        return make_terminal(std::string(kinds::TypeName), type);
      }
      pos_ = save;
    }
    if (at("{")) unsupported("braced macro argument");
    return parse_assignment();
  }

  AstNode parse_primary() {
    const Token& t = tok();
    switch (t.kind) {
      case TokenKind::Identifier:
        ++pos_;
        return make_terminal(std::string(kinds::NameExpr), t.text);
      case TokenKind::IntegerLiteral:
        ++pos_;
        return make_terminal(std::string(kinds::IntegerLiteralExpr), t.text);
      case TokenKind::FloatLiteral:
        ++pos_;
        return make_terminal(std::string(kinds::FloatLiteralExpr), t.text);
      case TokenKind::CharLiteral:
        ++pos_;
        return make_terminal(std::string(kinds::CharLiteralExpr), t.text);
      case TokenKind::StringLiteral:
        return parse_string_sequence();
      default:
        break;
    }
    if (at("(")) {
      if (at("{", 1)) unsupported("statement expression");
      ++pos_;
      AstNode inner = parse_expression();
      expect(")");
      return inner;
    }
    if (at_end()) parse_error("unexpected end of input in expression");
    parse_error("unexpected '" + t.text + "' in expression");
  }

  // Adjacent literals concatenate; format macros sandwiched between them
  // ("%" PRIx64 "\n") are part of the literal.
  AstNode parse_string_sequence() {
    std::string text = toks_[pos_++].text;
    while (true) {
      if (tok().kind == TokenKind::StringLiteral && !at_end()) {
        text += toks_[pos_++].text;
      } else if (tok().kind == TokenKind::Identifier &&
                 tok(1).kind == TokenKind::StringLiteral && pos_ + 1 < toks_.size()) {
        text += toks_[pos_++].text;
        text += toks_[pos_++].text;
      } else {
        break;
      }
    }
    return make_terminal(std::string(kinds::StringLiteralExpr), text);
  }

  const TokenList& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse_function(const TokenList& tokens) { return Parser(tokens).parse(); }

Ast parse_function_source(std::string_view source) {
  return parse_function(tokenize(source));
}

}  // namespace c2v::cparse
