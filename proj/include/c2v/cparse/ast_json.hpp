#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "c2v/cparse/ast.hpp"

namespace c2v::cparse {

// Tree interchange format so an external C front-end can stand in for the
// built-in parser. Each node is an object:
//
//   {"kind": "AssignExpr", "children": [ ... ]}     non-terminal
//   {"kind": "NameExpr", "value": "x"}              terminal
//
// "value" and a non-empty "children" array are mutually exclusive. The
// document root is either a bare node or {"ast_format": 1, "root": node}.
// See docs/ast-json.md.

nlohmann::json to_json(const AstNode& node);
nlohmann::json to_json_document(const Ast& ast);

// Throws Error{ParseError} on schema violations, including every AST
// invariant checked by validate().
Ast ast_from_json(const nlohmann::json& doc);
Ast ast_from_json_text(std::string_view text);

}  // namespace c2v::cparse
