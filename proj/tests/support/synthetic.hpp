#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "c2v/corpus/corpus.hpp"

namespace c2v::testing {

// Functions labelled vuln are exactly those that call kSinkName. Safe
// functions call a look-alike from a fixed pool at the same spot, so the
// label is decided by one identifier.
inline constexpr std::string_view kSinkName = "unchecked_copy";

// 2 * per_class functions, alternating labels, ids 0..n-1.
std::vector<FunctionSample> synthetic_functions(std::size_t per_class, std::uint64_t seed);

// synthetic_functions shuffled and cut 80/10/10 into train/valid/test.
SplitCorpus synthetic_splits(std::size_t per_class, std::uint64_t seed);

// JSON Lines in the corpus record format.
std::string to_jsonl(const std::vector<FunctionSample>& samples);

}  // namespace c2v::testing
