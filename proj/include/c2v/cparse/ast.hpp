#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c2v::cparse {

// A node is terminal exactly when it carries a value; terminals have no
// children and non-terminals have at least one.
struct AstNode {
  std::string kind;
  std::optional<std::string> value;
  std::vector<AstNode> children;

  bool is_terminal() const { return value.has_value(); }

  friend bool operator==(const AstNode&, const AstNode&) = default;
};

AstNode make_terminal(std::string kind, std::string value);
AstNode make_node(std::string kind, std::vector<AstNode> children);

struct Ast {
  AstNode root;

  friend bool operator==(const Ast&, const Ast&) = default;
};

// Throws Error{ParseError} if any node breaks the terminal/value duality or
// the root is not a FunctionDef.
void validate(const Ast& ast);

// Terminals in pre-order (which is source order for the built-in parser).
std::vector<const AstNode*> terminals(const AstNode& root);

std::size_t node_count(const AstNode& root);

// Compact single-line rendering: Kind[value] for terminals and
// Kind(child child ...) otherwise. Used by tests and diagnostics.
std::string to_sexpr(const AstNode& node);

}  // namespace c2v::cparse
