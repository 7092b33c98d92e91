#pragma once

#include <string_view>

#include "c2v/cparse/token.hpp"

namespace c2v::cparse {

// Splits C source into tokens. Comments and preprocessor directive lines
// (including their backslash continuations) are dropped. Throws
// Error{LexError} with a line:column position on unterminated literals or
// characters outside the C basic character set.
TokenList tokenize(std::string_view source);

}  // namespace c2v::cparse
