#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "c2v/corpus/corpus.hpp"
#include "c2v/cparse/ast.hpp"
#include "c2v/pathmine/paths.hpp"
#include "c2v/util/error.hpp"

namespace c2v::pathmine {

struct PathContext {
  std::string start_value;
  std::string path_hash;  // 32 lowercase hex digits
  std::string end_value;

  friend bool operator==(const PathContext&, const PathContext&) = default;
};

struct BagOfContexts {
  std::int64_t sample_id = 0;
  Label label = Label::Safe;
  std::vector<PathContext> contexts;

  friend bool operator==(const BagOfContexts&, const BagOfContexts&) = default;
};

inline constexpr std::string_view kStringPlaceholder = "STR";

// Raw lexeme except string literals (optionally prefixed) become STR.
std::string normalize_value(std::string_view raw);

// True if the value can be written to a C2V line: non-empty, and free of
// spaces, commas and control characters.
bool is_c2v_safe(std::string_view value);

struct BagStats {
  std::size_t eligible_paths = 0;   // after dropping unsafe values
  std::size_t dropped_unsafe = 0;   // contexts rejected for unsafe values
};

// Collects every eligible path-context; if more than max_contexts remain,
// keeps a uniform random subset of exactly max_contexts (without
// replacement), seeded from (limits.seed, sample_id). Contexts keep their
// enumeration order. Throws Error{EmptyBag} when nothing is eligible.
BagOfContexts extract_bag(const cparse::Ast& ast, std::int64_t sample_id,
                          Label label, const MiningLimits& limits,
                          BagStats* stats = nullptr);

struct SkipRecord {
  std::int64_t sample_id = 0;
  Label label = Label::Safe;
  ErrorKind kind = ErrorKind::ParseError;
  std::string reason;
};

struct ExtractionResult {
  std::vector<BagOfContexts> bags;   // corpus order, skipped samples removed
  std::vector<SkipRecord> skipped;   // corpus order
  std::size_t dropped_unsafe = 0;
};

// Supplies the tree for one sample. Must be safe to call concurrently.
using AstSource = std::function<cparse::Ast(const FunctionSample&)>;

// Parses and mines every sample. Lex, parse and empty-bag failures are
// recorded as skips; the result does not depend on `workers`. Without a
// source the built-in parser reads sample.source_text.
ExtractionResult extract_corpus(const std::vector<FunctionSample>& samples,
                                const MiningLimits& limits, std::size_t workers,
                                const AstSource& source = {});

}  // namespace c2v::pathmine
