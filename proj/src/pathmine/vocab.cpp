#include "c2v/pathmine/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "c2v/pathmine/md5.hpp"
#include "c2v/util/error.hpp"

namespace c2v::pathmine {

SymbolTable SymbolTable::with_reserved() {
  SymbolTable t;
  t.reserved_ = true;
  t.add(std::string(kPadToken), 0);
  t.add(std::string(kUnkToken), 0);
  return t;
}

SymbolId SymbolTable::add(std::string symbol, std::uint64_t frequency) {
  const auto id = static_cast<SymbolId>(entries_.size());
  auto [it, inserted] = index_.emplace(symbol, id);
  if (!inserted) {
    throw Error(ErrorKind::Format, "duplicate vocabulary entry '" + symbol + "'");
  }
  entries_.push_back({std::move(symbol), frequency});
  return id;
}

SymbolId SymbolTable::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it != index_.end() && !(reserved_ && it->second < 2)) return it->second;
  return reserved_ ? kUnkId : -1;
}

const std::string& SymbolTable::symbol(SymbolId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= entries_.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "symbol id " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(id)].symbol;
}

std::uint64_t SymbolTable::frequency(SymbolId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= entries_.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "symbol id " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(id)].frequency;
}

std::string SymbolTable::serialize(std::string_view table_name) const {
  std::string out(kFormatHeader);
  out += ' ';
  out += table_name;
  out += '\n';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(entries_[i].frequency);
    out += '\t';
    out += entries_[i].symbol;
    out += '\n';
  }
  return out;
}

SymbolTable SymbolTable::deserialize(std::string_view text, std::string_view table_name,
                                     bool reserved) {
  auto fail = [&](std::size_t line, const std::string& what) -> Error {
    return Error(ErrorKind::Format, std::string(table_name) + " vocabulary line " +
                                        std::to_string(line) + ": " + what);
  };
  SymbolTable table;
  table.reserved_ = reserved;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line_no == 1) {
      if (!line.starts_with(kFormatHeader)) throw fail(1, "missing '#c2v-format 1' header");
      continue;
    }
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) throw fail(line_no, "expected id<TAB>freq<TAB>symbol");
    long long id = -1;
    unsigned long long freq = 0;
    auto id_text = line.substr(0, tab1);
    auto freq_text = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (std::from_chars(id_text.data(), id_text.data() + id_text.size(), id).ec != std::errc{} ||
        std::from_chars(freq_text.data(), freq_text.data() + freq_text.size(), freq).ec !=
            std::errc{}) {
      throw fail(line_no, "malformed id or frequency");
    }
    if (id != static_cast<long long>(table.size())) throw fail(line_no, "ids are not dense");
    table.add(std::string(line.substr(tab2 + 1)), freq);
  }
  if (line_no == 0) throw fail(1, "empty file");
  if (reserved && (table.size() < 2 || table.entries_[0].symbol != kPadToken ||
                   table.entries_[1].symbol != kUnkToken)) {
    throw fail(2, "reserved PAD/UNK entries missing");
  }
  return table;
}

std::string Vocabulary::digest() const {
  return md5_hex(values.serialize("values") + paths.serialize("paths") +
                 tags.serialize("tags"));
}

namespace {

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + file.string());
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void Vocabulary::write(const std::filesystem::path& dir) const {
  write_text(dir / kValuesFile, values.serialize("values"));
  write_text(dir / kPathsFile, paths.serialize("paths"));
  write_text(dir / kTagsFile, tags.serialize("tags"));
}

Vocabulary Vocabulary::read(const std::filesystem::path& dir) {
  Vocabulary v;
  v.values = SymbolTable::deserialize(read_text(dir / kValuesFile), "values", true);
  v.paths = SymbolTable::deserialize(read_text(dir / kPathsFile), "paths", true);
  v.tags = SymbolTable::deserialize(read_text(dir / kTagsFile), "tags", false);
  if (v.tags.size() != 2 || v.tags.symbol(0) != "safe" || v.tags.symbol(1) != "vuln") {
    throw Error(ErrorKind::Format, "tags vocabulary must be exactly safe, vuln");
  }
  return v;
}

namespace {

void fill(SymbolTable& table, const std::map<std::string, std::uint64_t>& counts,
          std::uint64_t min_count) {
  std::vector<std::pair<std::string, std::uint64_t>> sorted;
  for (const auto& [symbol, count] : counts) {
    if (count >= min_count) sorted.emplace_back(symbol, count);
  }
  // std::map already orders symbols; a stable sort by count keeps ties
  // lexicographic.
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [symbol, count] : sorted) table.add(std::move(symbol), count);
}

}  // namespace

Vocabulary build_vocab(const std::vector<BagOfContexts>& train_bags,
                       std::uint64_t min_count) {
  std::map<std::string, std::uint64_t> value_counts;
  std::map<std::string, std::uint64_t> path_counts;
  std::uint64_t label_counts[2] = {0, 0};
  for (const auto& bag : train_bags) {
    ++label_counts[static_cast<int>(bag.label)];
    for (const auto& ctx : bag.contexts) {
      ++value_counts[ctx.start_value];
      ++value_counts[ctx.end_value];
      ++path_counts[ctx.path_hash];
    }
  }
  // Reserved spellings cannot come from C source, but guard anyway.
  value_counts.erase(std::string(kPadToken));
  value_counts.erase(std::string(kUnkToken));

  Vocabulary vocab;
  vocab.values = SymbolTable::with_reserved();
  vocab.paths = SymbolTable::with_reserved();
  fill(vocab.values, value_counts, std::max<std::uint64_t>(min_count, 1));
  fill(vocab.paths, path_counts, std::max<std::uint64_t>(min_count, 1));
  vocab.tags.add("safe", label_counts[0]);
  vocab.tags.add("vuln", label_counts[1]);
  return vocab;
}

EncodedBag encode_bag(const BagOfContexts& bag, const Vocabulary& vocab) {
  EncodedBag out;
  out.sample_id = bag.sample_id;
  out.label = Vocabulary::tag_id(bag.label);
  out.contexts.reserve(bag.contexts.size());
  for (const auto& ctx : bag.contexts) {
    out.contexts.push_back({vocab.value_id(ctx.start_value), vocab.path_id(ctx.path_hash),
                            vocab.value_id(ctx.end_value)});
  }
  return out;
}

EncodedDataset encode_all(const std::vector<BagOfContexts>& bags,
                          const Vocabulary& vocab) {
  EncodedDataset data;
  data.vocab_digest = vocab.digest();
  data.bags.reserve(bags.size());
  for (const auto& bag : bags) data.bags.push_back(encode_bag(bag, vocab));
  return data;
}

}  // namespace c2v::pathmine
