#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "c2v/corpus/corpus.hpp"
#include "c2v/pathmine/bag.hpp"

namespace c2v::pathmine {

using SymbolId = std::int32_t;

inline constexpr SymbolId kPadId = 0;
inline constexpr SymbolId kUnkId = 1;
inline constexpr std::string_view kPadToken = "<PAD>";
inline constexpr std::string_view kUnkToken = "<UNK>";

inline constexpr std::string_view kFormatHeader = "#c2v-format 1";

// Dense string <-> id table with frequencies. Used for values and paths
// (with PAD/UNK reserved at 0/1) and for tags (safe=0, vuln=1, no
// reserved ids).
class SymbolTable {
 public:
  struct Entry {
    std::string symbol;
    std::uint64_t frequency = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static SymbolTable with_reserved();

  SymbolId add(std::string symbol, std::uint64_t frequency);
  // UNK (or -1 for tables without reserved ids) when absent.
  SymbolId find(std::string_view symbol) const;
  const std::string& symbol(SymbolId id) const;
  std::uint64_t frequency(SymbolId id) const;
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // "<id>\t<frequency>\t<symbol>" lines after the format header.
  std::string serialize(std::string_view table_name) const;
  static SymbolTable deserialize(std::string_view text, std::string_view table_name,
                                 bool reserved);

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.entries_ == b.entries_;
  }

 private:
  bool reserved_ = false;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, SymbolId> index_;
};

class Vocabulary {
 public:
  SymbolTable values;
  SymbolTable paths;
  SymbolTable tags;

  SymbolId value_id(std::string_view v) const { return values.find(v); }
  SymbolId path_id(std::string_view p) const { return paths.find(p); }
  static SymbolId tag_id(Label label) { return static_cast<SymbolId>(label); }

  // MD5 over the three serialized tables; identifies the vocabulary in
  // checkpoints and manifests.
  std::string digest() const;

  void write(const std::filesystem::path& dir) const;
  static Vocabulary read(const std::filesystem::path& dir);

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

inline constexpr std::string_view kValuesFile = "values.vocab";
inline constexpr std::string_view kPathsFile = "paths.vocab";
inline constexpr std::string_view kTagsFile = "tags.vocab";

// Builds the vocabulary from training bags only. Symbols seen at least
// min_count times get ids >= 2, ordered by descending frequency then
// lexicographically.
Vocabulary build_vocab(const std::vector<BagOfContexts>& train_bags,
                       std::uint64_t min_count = 1);

struct EncodedContext {
  SymbolId start = kPadId;
  SymbolId path = kPadId;
  SymbolId end = kPadId;

  bool is_pad() const { return start == kPadId && path == kPadId && end == kPadId; }
  friend bool operator==(const EncodedContext&, const EncodedContext&) = default;
};

struct EncodedBag {
  std::int64_t sample_id = 0;
  SymbolId label = 0;
  std::vector<EncodedContext> contexts;

  friend bool operator==(const EncodedBag&, const EncodedBag&) = default;
};

// Out-of-vocabulary symbols map to UNK. The result has one entry per
// context, in bag order.
EncodedBag encode_bag(const BagOfContexts& bag, const Vocabulary& vocab);

// Encoded bags tagged with the digest of the vocabulary that produced them.
struct EncodedDataset {
  std::string vocab_digest;
  std::vector<EncodedBag> bags;
};

EncodedDataset encode_all(const std::vector<BagOfContexts>& bags,
                          const Vocabulary& vocab);

}  // namespace c2v::pathmine
