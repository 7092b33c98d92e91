#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace c2v::cparse {

struct SourceChunk {
  std::string text;
  int first_line = 1;
};

// Cuts a C file into top-level function definitions: every brace group at
// file scope whose header ends in a parameter list. Prototypes, global
// declarations, type definitions and initializers are dropped. Unbalanced
// trailing text is returned as a final chunk so the caller can report it.
std::vector<SourceChunk> split_functions(std::string_view source);

}  // namespace c2v::cparse
