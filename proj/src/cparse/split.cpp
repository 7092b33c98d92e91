#include "c2v/cparse/split.hpp"

#include <cctype>

namespace c2v::cparse {

namespace {

// Removes trailing whitespace and comments to inspect the header's last
// significant character.
char last_significant(std::string_view header) {
  std::size_t end = header.size();
  while (end > 0) {
    while (end > 0 && std::isspace(static_cast<unsigned char>(header[end - 1]))) --end;
    if (end >= 2 && header.substr(end - 2, 2) == "*/") {
      auto open = header.rfind("/*", end - 2);
      if (open == std::string_view::npos) return header[end - 1];
      end = open;
      continue;
    }
    break;
  }
  return end == 0 ? '\0' : header[end - 1];
}

}  // namespace

std::vector<SourceChunk> split_functions(std::string_view src) {
  std::vector<SourceChunk> chunks;
  std::size_t start = 0;
  std::size_t header_end = 0;
  int start_line = 1;
  int line = 1;
  int depth = 0;
  bool line_start = true;
  bool seen_content = false;

  auto restart = [&](std::size_t next) {
    start = next;
    seen_content = false;
  };

  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      line_start = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;

    if (c == '#' && line_start && depth == 0) {
      // Directive lines at file scope, including continuations.
      while (i < src.size() && src[i] != '\n') {
        if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
          ++i;
          ++line;
        }
        ++i;
      }
      --i;
      if (!seen_content) restart(i + 1);
      continue;
    }
    line_start = false;

    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i + 1 < src.size() && src[i + 1] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      i += 2;
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      ++i;
      continue;
    }

    if (!seen_content) {
      seen_content = true;
      start = i;
      start_line = line;
    }

    if (c == '"' || c == '\'') {
      for (++i; i < src.size() && src[i] != c && src[i] != '\n'; ++i) {
        if (src[i] == '\\') ++i;
      }
      continue;
    }
    if (c == '{') {
      if (depth == 0) header_end = i;
      ++depth;
    } else if (c == '}') {
      if (depth > 0 && --depth == 0) {
        if (last_significant(src.substr(start, header_end - start)) == ')') {
          chunks.push_back({std::string(src.substr(start, i + 1 - start)), start_line});
        }
        restart(i + 1);
      }
    } else if (c == ';' && depth == 0) {
      restart(i + 1);
    }
  }
  if (seen_content && depth > 0) {
    chunks.push_back({std::string(src.substr(start)), start_line});
  }
  return chunks;
}

}  // namespace c2v::cparse
