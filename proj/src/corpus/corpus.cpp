#include "c2v/corpus/corpus.hpp"

#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "c2v/util/error.hpp"

namespace c2v {

std::string_view label_token(Label label) {
  return label == Label::Vuln ? "vuln" : "safe";
}

std::optional<Label> parse_label_token(std::string_view token) {
  if (token == "safe") return Label::Safe;
  if (token == "vuln") return Label::Vuln;
  return std::nullopt;
}

std::string_view split_name(SplitName split) {
  switch (split) {
    case SplitName::Train: return "train";
    case SplitName::Valid: return "valid";
    case SplitName::Test: return "test";
  }
  return "unknown";
}

namespace {

[[noreturn]] void malformed(std::size_t line_number, const std::string& what) {
  throw Error(ErrorKind::MalformedRecord,
              "line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

FunctionSample parse_record(std::string_view line, std::size_t line_number) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(line_number, std::string("invalid JSON (") + e.what() + ")");
  }
  if (!record.is_object()) malformed(line_number, "record is not an object");

  auto func = record.find("func");
  if (func == record.end() || !func->is_string())
    malformed(line_number, "missing string field 'func'");
  auto target = record.find("target");
  if (target == record.end() || !target->is_number_integer())
    malformed(line_number, "missing integer field 'target'");

  FunctionSample sample;
  sample.source_text = func->get<std::string>();
  if (sample.source_text.empty()) malformed(line_number, "empty 'func'");

  const auto value = target->get<std::int64_t>();
  if (value != 0 && value != 1) {
    throw Error(ErrorKind::InvalidLabel,
                "line " + std::to_string(line_number) + ": target " +
                    std::to_string(value) + " is not 0 or 1");
  }
  sample.label = value == 1 ? Label::Vuln : Label::Safe;

  auto idx = record.find("idx");
  if (idx == record.end() || idx->is_null()) {
    sample.id = static_cast<std::int64_t>(line_number);
  } else if (idx->is_number_integer()) {
    sample.id = idx->get<std::int64_t>();
  } else {
    malformed(line_number, "field 'idx' is not an integer");
  }
  return sample;
}

std::vector<FunctionSample> load_split(const std::filesystem::path& path,
                                       SplitName split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + std::string(split_name(split)) +
                                   " split " + path.string());
  }
  std::vector<FunctionSample> samples;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    samples.push_back(parse_record(line, line_number));
  }
  return samples;
}

LabelCounts corpus_stats(const std::vector<FunctionSample>& samples) {
  LabelCounts counts;
  for (const auto& s : samples) {
    if (s.label == Label::Vuln) {
      ++counts.vuln;
    } else {
      ++counts.safe;
    }
  }
  return counts;
}

void check_disjoint(const SplitCorpus& corpus) {
  std::unordered_map<std::int64_t, std::string_view> owner;
  auto visit = [&](const std::vector<FunctionSample>& split,
                   std::string_view name) {
    for (const auto& s : split) {
      auto [it, inserted] = owner.emplace(s.id, name);
      if (!inserted) {
        throw Error(ErrorKind::MalformedRecord,
                    "sample id " + std::to_string(s.id) + " appears in both " +
                        std::string(it->second) + " and " + std::string(name));
      }
    }
  };
  visit(corpus.train, "train");
  visit(corpus.validation, "valid");
  visit(corpus.test, "test");
}

}  // namespace c2v
