#pragma once

#include <string_view>

#include "c2v/cparse/ast.hpp"
#include "c2v/cparse/token.hpp"

namespace c2v::cparse {

// Parses exactly one C function definition into an Ast rooted at
// FunctionDef.
//
// The grammar is a pragmatic subset: declarations with initializers,
// compound/expression/if/else/while/do/for/return/break/continue/switch/
// case/default/goto/label statements, and unary, binary, assignment,
// ternary, comma, call, member, index, cast and sizeof expressions. Types
// are not parsed structurally; their tokens are joined into a single
// TypeName value ("const|uint8_t*").
//
// Throws Error{ParseUnsupported} for recognised constructs outside the
// subset (function-pointer declarators, compound literals, designated
// initializers, GNU statement expressions, inline asm, nested type
// definitions, K&R parameter lists, empty bodies) and Error{ParseError}
// for token sequences that are not valid C at all.
Ast parse_function(const TokenList& tokens);

// tokenize() followed by parse_function().
Ast parse_function_source(std::string_view source);

}  // namespace c2v::cparse
