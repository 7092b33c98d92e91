#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "c2v/pathmine/bag.hpp"

namespace c2v::pathmine {

// Line-oriented bag format:
//
//   #c2v-format 1
//   <label> <start>,<path-hash>,<end> <start>,<path-hash>,<end> ...
//
// One line per function; labels are "safe" or "vuln".
void write_c2v(std::ostream& out, const std::vector<BagOfContexts>& bags);
void write_c2v_file(const std::filesystem::path& file,
                    const std::vector<BagOfContexts>& bags);

// Sample ids are assigned from the 0-based line order of the bags. Throws
// Error{Format} with the line number on malformed input.
std::vector<BagOfContexts> read_c2v(std::istream& in);
std::vector<BagOfContexts> read_c2v_file(const std::filesystem::path& file);

}  // namespace c2v::pathmine
