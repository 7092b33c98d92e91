#include "c2v/cparse/ast.hpp"

#include "c2v/cparse/node_kinds.hpp"
#include "c2v/util/error.hpp"

namespace c2v::cparse {

AstNode make_terminal(std::string kind, std::string value) {
  return AstNode{std::move(kind), std::move(value), {}};
}

AstNode make_node(std::string kind, std::vector<AstNode> children) {
  return AstNode{std::move(kind), std::nullopt, std::move(children)};
}

namespace {

void check_node(const AstNode& node, const std::string& where) {
  if (node.kind.empty()) {
    throw Error(ErrorKind::ParseError, "node at " + where + " has no kind");
  }
  if (node.is_terminal()) {
    if (!node.children.empty()) {
      throw Error(ErrorKind::ParseError,
                  "terminal " + node.kind + " at " + where + " has children");
    }
    if (node.value->empty()) {
      throw Error(ErrorKind::ParseError,
                  "terminal " + node.kind + " at " + where + " has an empty value");
    }
    return;
  }
  if (node.children.empty()) {
    throw Error(ErrorKind::ParseError,
                "non-terminal " + node.kind + " at " + where + " has no children");
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    check_node(node.children[i], where + "/" + std::to_string(i));
  }
}

void collect_terminals(const AstNode& node, std::vector<const AstNode*>& out) {
  if (node.is_terminal()) {
    out.push_back(&node);
    return;
  }
  for (const auto& child : node.children) collect_terminals(child, out);
}

}  // namespace

void validate(const Ast& ast) {
  if (ast.root.kind != kinds::FunctionDef) {
    throw Error(ErrorKind::ParseError,
                "root kind is " + ast.root.kind + ", expected FunctionDef");
  }
  check_node(ast.root, "root");
}

std::vector<const AstNode*> terminals(const AstNode& root) {
  std::vector<const AstNode*> out;
  collect_terminals(root, out);
  return out;
}

std::size_t node_count(const AstNode& root) {
  std::size_t n = 1;
  for (const auto& child : root.children) n += node_count(child);
  return n;
}

std::string to_sexpr(const AstNode& node) {
  if (node.is_terminal()) return node.kind + "[" + *node.value + "]";
  std::string out = node.kind + "(";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += ' ';
    out += to_sexpr(node.children[i]);
  }
  out += ')';
  return out;
}

}  // namespace c2v::cparse
