#include "c2v/pathmine/bag.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "c2v/cparse/parser.hpp"
#include "c2v/pathmine/md5.hpp"
#include "c2v/util/parallel.hpp"
#include "c2v/util/rng.hpp"

namespace c2v::pathmine {

std::string normalize_value(std::string_view raw) {
  std::size_t prefix = 0;
  if (raw.starts_with("u8")) {
    prefix = 2;
  } else if (!raw.empty() && (raw[0] == 'L' || raw[0] == 'u' || raw[0] == 'U')) {
    prefix = 1;
  }
  if (raw.size() > prefix && raw[prefix] == '"') return std::string(kStringPlaceholder);
  if (!raw.empty() && raw[0] == '"') return std::string(kStringPlaceholder);
  return std::string(raw);
}

bool is_c2v_safe(std::string_view value) {
  if (value.empty()) return false;
  for (unsigned char c : value) {
    if (c == ' ' || c == ',' || c < 0x20 || c == 0x7f) return false;
  }
  return true;
}

BagOfContexts extract_bag(const cparse::Ast& ast, std::int64_t sample_id,
                          Label label, const MiningLimits& limits,
                          BagStats* stats) {
  limits.validate();
  IndexedAst indexed(ast.root);
  const auto& terms = indexed.terminals();

  std::vector<std::string> values;
  std::vector<bool> safe;
  values.reserve(terms.size());
  for (auto t : terms) {
    values.push_back(normalize_value(*indexed.node(t).value));
    safe.push_back(is_c2v_safe(values.back()));
  }

  std::vector<TerminalPair> pairs = indexed.pairs(limits);
  const std::size_t total = pairs.size();
  std::erase_if(pairs, [&](const TerminalPair& p) { return !safe[p.start] || !safe[p.end]; });
  if (stats) {
    stats->eligible_paths = pairs.size();
    stats->dropped_unsafe = total - pairs.size();
  }
  if (pairs.empty()) {
    throw Error(ErrorKind::EmptyBag,
                "sample " + std::to_string(sample_id) + " yields no path-contexts");
  }

  const auto cap = static_cast<std::size_t>(limits.max_contexts);
  if (pairs.size() > cap) {
    // Partial Fisher-Yates over indices, then restore enumeration order.
    Rng rng(derive_seed(limits.seed, static_cast<std::uint64_t>(sample_id)));
    std::vector<std::size_t> index(pairs.size());
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < cap; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(index.size() - i));
      std::swap(index[i], index[j]);
    }
    index.resize(cap);
    std::sort(index.begin(), index.end());
    std::vector<TerminalPair> chosen;
    chosen.reserve(cap);
    for (auto i : index) chosen.push_back(pairs[i]);
    pairs = std::move(chosen);
  }

  BagOfContexts bag;
  bag.sample_id = sample_id;
  bag.label = label;
  bag.contexts.reserve(pairs.size());
  for (const auto& pair : pairs) {
    AstPath path = indexed.materialize(pair);
    bag.contexts.push_back(
        {values[pair.start], hash_path(path_string(path)), values[pair.end]});
  }
  return bag;
}

ExtractionResult extract_corpus(const std::vector<FunctionSample>& samples,
                                const MiningLimits& limits, std::size_t workers,
                                const AstSource& source) {
  limits.validate();
  struct Slot {
    std::optional<BagOfContexts> bag;
    std::optional<SkipRecord> skip;
    std::size_t dropped = 0;
  };
  std::vector<Slot> slots(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    const FunctionSample& sample = samples[i];
    Slot& slot = slots[i];
    try {
      cparse::Ast ast =
          source ? source(sample) : cparse::parse_function_source(sample.source_text);
      BagStats stats;
      slot.bag = extract_bag(ast, sample.id, sample.label, limits, &stats);
      slot.dropped = stats.dropped_unsafe;
    } catch (const Error& e) {
      slot.skip = SkipRecord{sample.id, sample.label, e.kind(), e.what()};
    }
  });

  ExtractionResult result;
  for (auto& slot : slots) {
    if (slot.bag) result.bags.push_back(std::move(*slot.bag));
    if (slot.skip) result.skipped.push_back(std::move(*slot.skip));
    result.dropped_unsafe += slot.dropped;
  }
  return result;
}

}  // namespace c2v::pathmine
