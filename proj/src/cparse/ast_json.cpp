#include "c2v/cparse/ast_json.hpp"

#include "c2v/cparse/node_kinds.hpp"
#include "c2v/util/error.hpp"

namespace c2v::cparse {

nlohmann::json to_json(const AstNode& node) {
  nlohmann::json out;
  out["kind"] = node.kind;
  if (node.is_terminal()) {
    out["value"] = *node.value;
    return out;
  }
  auto children = nlohmann::json::array();
  for (const auto& child : node.children) children.push_back(to_json(child));
  out["children"] = std::move(children);
  return out;
}

nlohmann::json to_json_document(const Ast& ast) {
  return {{"ast_format", kinds::kAstFormatVersion}, {"root", to_json(ast.root)}};
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::ParseError, "AST JSON: " + what);
}

AstNode node_from_json(const nlohmann::json& j, int depth) {
  if (depth > 10000) bad("tree too deep");
  if (!j.is_object()) bad("node is not an object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) bad("node without string 'kind'");
  AstNode node;
  node.kind = kind->get<std::string>();
  auto value = j.find("value");
  auto children = j.find("children");
  if (value != j.end() && !value->is_null()) {
    if (!value->is_string()) bad("'value' of " + node.kind + " is not a string");
    if (children != j.end() && !children->empty()) {
      bad("terminal " + node.kind + " has children");
    }
    node.value = value->get<std::string>();
    return node;
  }
  if (children == j.end() || !children->is_array()) {
    bad("non-terminal " + node.kind + " without 'children' array");
  }
  for (const auto& child : *children) {
    node.children.push_back(node_from_json(child, depth + 1));
  }
  return node;
}

}  // namespace

Ast ast_from_json(const nlohmann::json& doc) {
  const nlohmann::json* root = &doc;
  if (doc.is_object() && doc.contains("root")) {
    auto version = doc.find("ast_format");
    if (version != doc.end() &&
        (!version->is_number_integer() ||
         version->get<int>() != kinds::kAstFormatVersion)) {
      bad("unsupported ast_format " + version->dump());
    }
    root = &doc["root"];
  }
  Ast ast{node_from_json(*root, 0)};
  validate(ast);
  return ast;
}

Ast ast_from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(e.what());
  }
  return ast_from_json(doc);
}

}  // namespace c2v::cparse
