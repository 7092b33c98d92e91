#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c2v {

// Binary vulnerability label. The numeric values match the corpus targets.
enum class Label : std::uint8_t { Safe = 0, Vuln = 1 };

std::string_view label_token(Label label);
std::optional<Label> parse_label_token(std::string_view token);

enum class SplitName { Train, Valid, Test };

std::string_view split_name(SplitName split);

struct FunctionSample {
  std::int64_t id = 0;
  std::string source_text;
  Label label = Label::Safe;

  friend bool operator==(const FunctionSample&, const FunctionSample&) = default;
};

struct SplitCorpus {
  std::vector<FunctionSample> train;
  std::vector<FunctionSample> validation;
  std::vector<FunctionSample> test;
};

struct LabelCounts {
  std::size_t vuln = 0;
  std::size_t safe = 0;

  std::size_t total() const { return vuln + safe; }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

// Parses one JSON Lines record ({"func": ..., "target": 0|1, "idx": ...}).
// line_number is 1-based and doubles as the id when idx is absent.
FunctionSample parse_record(std::string_view line, std::size_t line_number);

// Loads a whole split in file order. Blank lines are not records and are
// rejected like any other malformed line.
std::vector<FunctionSample> load_split(const std::filesystem::path& path,
                                       SplitName split);

LabelCounts corpus_stats(const std::vector<FunctionSample>& samples);

// Checks that the three splits are pairwise disjoint by id. Throws
// MalformedRecord naming the first duplicated id.
void check_disjoint(const SplitCorpus& corpus);

}  // namespace c2v
