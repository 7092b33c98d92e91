// c2v: extract -> train -> evaluate / predict.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "c2v/corpus/corpus.hpp"
#include "c2v/cparse/ast_json.hpp"
#include "c2v/cparse/parser.hpp"
#include "c2v/harness/predict.hpp"
#include "c2v/harness/report.hpp"
#include "c2v/harness/trainer.hpp"
#include "c2v/model/checkpoint.hpp"
#include "c2v/pathmine/bag.hpp"
#include "c2v/pathmine/c2v_format.hpp"
#include "c2v/pathmine/md5.hpp"
#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/error.hpp"
#include "c2v/util/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kSkipsFile = "skips.json";
constexpr const char* kCheckpointFile = "checkpoint.bin";

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw c2v::Error(c2v::ErrorKind::Io, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) throw c2v::Error(c2v::ErrorKind::Io, "cannot write " + p.string());
}

std::string file_md5(const fs::path& p) { return c2v::pathmine::md5_hex(read_file(p)); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw c2v::Error(c2v::ErrorKind::Format, p.string() + ": " + e.what());
  }
}

json new_manifest(const std::string& command, const std::string& started) {
  return {{"tool", "c2v"},
          {"version", kVersion},
          {"command", command},
          {"started", started},
          {"finished", utc_now()}};
}

json limits_json(const c2v::pathmine::MiningLimits& l) {
  return {{"max_length", l.max_length},
          {"max_width", l.max_width},
          {"max_contexts", l.max_contexts},
          {"seed", l.seed}};
}

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  fs::path data_dir;
  fs::path train, valid, test;
  fs::path out;
  fs::path ast_dir;
  c2v::pathmine::MiningLimits limits;
  std::uint64_t min_count = 1;
  std::size_t workers = 0;
};

int cmd_extract(ExtractOptions o) {
  const std::string started = utc_now();
  if (o.train.empty()) o.train = o.data_dir / "train.jsonl";
  if (o.valid.empty()) o.valid = o.data_dir / "valid.jsonl";
  if (o.test.empty()) o.test = o.data_dir / "test.jsonl";
  try {
    o.limits.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::size_t workers = o.workers == 0 ? c2v::default_workers() : o.workers;

  const std::pair<c2v::SplitName, fs::path> inputs[] = {
      {c2v::SplitName::Train, o.train},
      {c2v::SplitName::Valid, o.valid},
      {c2v::SplitName::Test, o.test}};

  c2v::SplitCorpus corpus;
  corpus.train = c2v::load_split(o.train, c2v::SplitName::Train);
  corpus.validation = c2v::load_split(o.valid, c2v::SplitName::Valid);
  corpus.test = c2v::load_split(o.test, c2v::SplitName::Test);
  c2v::check_disjoint(corpus);

  const std::vector<c2v::FunctionSample>* splits[] = {&corpus.train, &corpus.validation,
                                                      &corpus.test};
  // <ast-dir>/<id>.json, when present, replaces the built-in parser.
  c2v::pathmine::AstSource source;
  if (!o.ast_dir.empty()) {
    if (!fs::is_directory(o.ast_dir)) {
      throw UsageError("--ast-dir is not a directory: " + o.ast_dir.string());
    }
    source = [dir = o.ast_dir](const c2v::FunctionSample& sample) {
      const fs::path file = dir / (std::to_string(sample.id) + ".json");
      if (!fs::exists(file)) return c2v::cparse::parse_function_source(sample.source_text);
      return c2v::cparse::ast_from_json_text(read_file(file));
    };
  }
  c2v::pathmine::ExtractionResult results[3];
  for (int s = 0; s < 3; ++s) {
    results[s] = c2v::pathmine::extract_corpus(*splits[s], o.limits, workers, source);
  }
  const auto vocab = c2v::pathmine::build_vocab(results[0].bags, o.min_count);

  fs::create_directories(o.out);
  json skips = json::array();
  json counts = json::object();
  json inputs_json = json::object();
  json outputs_json = json::object();
  std::size_t dropped = 0;
  for (int s = 0; s < 3; ++s) {
    const std::string name(c2v::split_name(inputs[s].first));
    const fs::path c2v_file = o.out / (name + ".c2v");
    c2v::pathmine::write_c2v_file(c2v_file, results[s].bags);
    for (const auto& k : results[s].skipped) {
      skips.push_back({{"split", name},
                       {"id", k.sample_id},
                       {"label", c2v::label_token(k.label)},
                       {"kind", c2v::to_string(k.kind)},
                       {"reason", k.reason}});
    }
    const auto input_counts = c2v::corpus_stats(*splits[s]);
    counts[name] = {{"input", input_counts.total()},
                    {"input_vuln", input_counts.vuln},
                    {"input_safe", input_counts.safe},
                    {"kept", results[s].bags.size()},
                    {"skipped", results[s].skipped.size()}};
    dropped += results[s].dropped_unsafe;
    inputs_json[name] = {{"path", fs::absolute(inputs[s].second).string()},
                         {"md5", file_md5(inputs[s].second)}};
    outputs_json[name + ".c2v"] = file_md5(c2v_file);
    std::cout << name << ": " << splits[s]->size() << " functions, "
              << results[s].bags.size() << " extracted, " << results[s].skipped.size()
              << " skipped\n";
    if (splits[s]->empty()) std::cerr << "warning: " << name << " split is empty\n";
  }
  if (dropped > 0) {
    std::cerr << "warning: dropped " << dropped
              << " path-contexts whose values contain spaces, commas or control characters\n";
  }

  vocab.write(o.out);
  for (auto f : {c2v::pathmine::kValuesFile, c2v::pathmine::kPathsFile,
                 c2v::pathmine::kTagsFile}) {
    outputs_json[std::string(f)] = file_md5(o.out / f);
  }
  write_file(o.out / kSkipsFile, json({{"counts", counts},
                                       {"dropped_unsafe_contexts", dropped},
                                       {"skipped", skips}})
                                     .dump(2) +
                                     "\n");

  json manifest = new_manifest("extract", started);
  manifest["config"] = limits_json(o.limits);
  manifest["config"]["min_count"] = o.min_count;
  if (!o.ast_dir.empty()) manifest["config"]["ast_dir"] = o.ast_dir.string();
  manifest["inputs"] = inputs_json;
  manifest["outputs"] = outputs_json;
  manifest["vocab_digest"] = vocab.digest();
  manifest["vocab_sizes"] = {{"values", vocab.values.size()},
                             {"paths", vocab.paths.size()},
                             {"tags", vocab.tags.size()}};
  write_file(o.out / kManifestFile, manifest.dump(2) + "\n");
  std::cout << "vocabulary " << vocab.values.size() << " values, " << vocab.paths.size()
            << " paths (" << vocab.digest() << ")\n";
  return kOk;
}

// ------------------------------------------------------------------ train

// Loads the vocabulary of an extraction directory and checks it and the
// C2V files against the directory's manifest.
struct Extracted {
  json manifest;
  c2v::pathmine::Vocabulary vocab;
  std::string digest;
};

Extracted load_extracted(const fs::path& dir, std::initializer_list<const char*> c2v_files) {
  Extracted e;
  e.manifest = read_json(dir / kManifestFile);
  if (e.manifest.value("command", "") != "extract") {
    throw c2v::Error(c2v::ErrorKind::Format, (dir / kManifestFile).string() +
                                                 " is not an extraction manifest");
  }
  e.vocab = c2v::pathmine::Vocabulary::read(dir);
  e.digest = e.vocab.digest();
  const std::string recorded = e.manifest.value("vocab_digest", "");
  if (recorded != e.digest) {
    throw c2v::Error(c2v::ErrorKind::VocabMismatch, "vocabulary in " + dir.string() +
                                                        " has digest " + e.digest +
                                                        ", manifest records " + recorded);
  }
  for (const char* f : c2v_files) {
    const std::string recorded_md5 = e.manifest["outputs"].value(f, "");
    if (file_md5(dir / f) != recorded_md5) {
      throw c2v::Error(c2v::ErrorKind::Format,
                       (dir / f).string() + " does not match the extraction manifest");
    }
  }
  return e;
}

c2v::pathmine::EncodedDataset load_encoded(const fs::path& file,
                                           const c2v::pathmine::Vocabulary& vocab) {
  return c2v::pathmine::encode_all(c2v::pathmine::read_c2v_file(file), vocab);
}

struct TrainOptions {
  fs::path data_dir;
  fs::path out;
  c2v::harness::TrainConfig config;
};

int cmd_train(TrainOptions o) {
  const std::string started = utc_now();
  if (o.out.empty()) o.out = o.data_dir / "model";
  if (o.config.workers == 0) o.config.workers = c2v::default_workers();

  try {
    o.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  // Mining limits are fixed at extraction time; they are copied into the
  // training config so that predict can mine new functions the same way.
  const auto ex = load_extracted(o.data_dir, {"train.c2v", "valid.c2v"});
  try {
    const json& lc = ex.manifest.at("config");
    o.config.limits.max_length = lc.at("max_length").get<int>();
    o.config.limits.max_width = lc.at("max_width").get<int>();
    o.config.limits.max_contexts = lc.at("max_contexts").get<int>();
    o.config.limits.seed = lc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw c2v::Error(c2v::ErrorKind::Format, std::string("extraction manifest: ") + e.what());
  }

  const auto train_set = load_encoded(o.data_dir / "train.c2v", ex.vocab);
  const auto valid_set = load_encoded(o.data_dir / "valid.c2v", ex.vocab);

  fs::create_directories(o.out);
  std::ofstream log(o.out / "train.log", std::ios::trunc);
  std::ofstream jsonl(o.out / "metrics.jsonl", std::ios::binary | std::ios::trunc);
  if (!log || !jsonl) throw c2v::Error(c2v::ErrorKind::Io, "cannot write to " + o.out.string());

  const auto result = c2v::harness::train(
      train_set, valid_set, ex.vocab, o.config, [&](const c2v::harness::EpochLog& e) {
        const std::string line = c2v::harness::epoch_text(e);
        std::cout << line << std::endl;
        log << utc_now() << ' ' << line << '\n' << std::flush;
        jsonl << c2v::harness::epoch_json(e).dump() << '\n' << std::flush;
      });

  const fs::path ckpt_file = o.out / kCheckpointFile;
  c2v::model::save_checkpoint(ckpt_file, result.best);
  std::cout << "best epoch " << result.best_epoch << " (validation)\n"
            << c2v::harness::metrics_text(result.best_validation);

  json manifest = new_manifest("train", started);
  manifest["config"] = o.config.to_json();
  manifest["inputs"] = {
      {"data_dir", fs::absolute(o.data_dir).string()},
      {"train.c2v", ex.manifest["outputs"]["train.c2v"]},
      {"valid.c2v", ex.manifest["outputs"]["valid.c2v"]},
  };
  manifest["vocab_digest"] = ex.digest;
  manifest["best_epoch"] = result.best_epoch;
  manifest["outputs"] = {{kCheckpointFile, file_md5(ckpt_file)}};
  write_file(o.out / kManifestFile, manifest.dump(2) + "\n");
  return kOk;
}

// --------------------------------------------------------------- evaluate

struct EvaluateOptions {
  fs::path data_dir;
  fs::path checkpoint;
  fs::path test;
  fs::path report;
  std::size_t workers = 0;
};

std::size_t skipped_for(const fs::path& data_dir, const std::string& split) {
  const fs::path f = data_dir / kSkipsFile;
  if (!fs::exists(f)) return 0;
  std::size_t n = 0;
  for (const auto& s : read_json(f).at("skipped")) {
    if (s.value("split", "") == split) ++n;
  }
  return n;
}

int cmd_evaluate(EvaluateOptions o) {
  if (o.test.empty()) o.test = o.data_dir / "test.c2v";
  if (o.report.empty()) o.report = o.checkpoint.parent_path() / "report.json";
  const std::size_t workers = o.workers == 0 ? c2v::default_workers() : o.workers;

  const auto vocab = c2v::pathmine::Vocabulary::read(o.data_dir);
  const auto ckpt = c2v::model::load_checkpoint(o.checkpoint, vocab.digest());
  const auto data = load_encoded(o.test, vocab);
  const auto metrics = c2v::harness::evaluate(data, ckpt, workers);
  const std::size_t skipped = skipped_for(o.data_dir, o.test.stem().string());

  std::cout << c2v::harness::metrics_text(metrics) << "skipped " << skipped << "\n";
  auto report = c2v::harness::evaluation_report(metrics, skipped, ckpt.vocab_digest);
  report["test_md5"] = file_md5(o.test);
  report["checkpoint_md5"] = file_md5(o.checkpoint);
  write_file(o.report, report.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  fs::path data_dir;
  fs::path checkpoint;
  std::string input = "-";
};

int cmd_predict(const PredictOptions& o) {
  const auto vocab = c2v::pathmine::Vocabulary::read(o.data_dir);
  const auto ckpt = c2v::model::load_checkpoint(o.checkpoint, vocab.digest());
  const auto limits = c2v::harness::checkpoint_config(ckpt).limits;

  std::string source;
  if (o.input == "-") {
    source.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    source = read_file(o.input);
  }

  const auto outcomes = c2v::harness::predict_source(source, ckpt.params, vocab, limits);
  std::size_t scored = 0;
  for (const auto& outcome : outcomes) {
    if (const auto* p = std::get_if<c2v::harness::Prediction>(&outcome)) {
      char q[32];
      std::snprintf(q, sizeof q, "%.6f", p->q_vuln);
      std::cout << c2v::label_token(p->label) << '\t' << q << '\n';
      ++scored;
    } else {
      const auto& u = std::get<c2v::harness::Unscorable>(outcome);
      std::cerr << "unscorable: " << u.reason << '\n';
    }
  }
  return !outcomes.empty() && scored == 0 ? kData : kOk;
}

void add_limits(CLI::App* cmd, c2v::pathmine::MiningLimits& l) {
  cmd->add_option("--max-length", l.max_length, "Maximum path length in edges")
      ->capture_default_str();
  cmd->add_option("--max-width", l.max_width, "Maximum sibling distance at the top node")
      ->capture_default_str();
  cmd->add_option("--max-contexts", l.max_contexts, "Path-contexts kept per function")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-context vulnerability classifier"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Mine path-contexts from JSON Lines splits");
  extract->add_option("--data-dir", ex.data_dir,
                      "Directory holding train.jsonl, valid.jsonl and test.jsonl");
  extract->add_option("--train", ex.train, "Training split (JSON Lines)");
  extract->add_option("--valid", ex.valid, "Validation split (JSON Lines)");
  extract->add_option("--test", ex.test, "Test split (JSON Lines)");
  extract->add_option("-o,--out", ex.out, "Output directory")->required();
  add_limits(extract, ex.limits);
  extract->add_option("--seed", ex.limits.seed, "Sampling seed")->capture_default_str();
  extract->add_option("--min-count", ex.min_count, "Minimum training frequency for a symbol")
      ->capture_default_str();
  extract->add_option("--workers", ex.workers, "Worker threads (0 = all cores)");
  extract->add_option("--ast-dir", ex.ast_dir,
                      "Directory of <id>.json trees from an external parser");

  TrainOptions tr;
  auto* train = app.add_subcommand("train", "Train on an extraction directory");
  train->add_option("-d,--data", tr.data_dir, "Extraction directory")->required();
  train->add_option("-o,--out", tr.out, "Model directory (default: <data>/model)");
  train->add_option("--epochs", tr.config.epochs)->capture_default_str();
  train->add_option("--batch-size", tr.config.batch_size)->capture_default_str();
  train->add_option("--embedding-size", tr.config.embedding_size)->capture_default_str();
  train->add_option("--dropout", tr.config.dropout_rate)->capture_default_str();
  train->add_option("--lr", tr.config.learning_rate)->capture_default_str();
  train->add_option("--seed", tr.config.seed)->capture_default_str();
  train->add_option("--workers", tr.config.workers, "Evaluation threads (0 = all cores)");
  tr.config.workers = 0;

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a C2V file with a checkpoint");
  evaluate->add_option("-d,--data", ev.data_dir, "Extraction directory (vocabulary)")
      ->required();
  evaluate->add_option("-c,--checkpoint", ev.checkpoint)->required();
  evaluate->add_option("--test", ev.test, "C2V file (default: <data>/test.c2v)");
  evaluate->add_option("--report", ev.report, "JSON report (default: next to checkpoint)");
  evaluate->add_option("--workers", ev.workers, "Worker threads (0 = all cores)");

  PredictOptions pr;
  auto* predict = app.add_subcommand("predict", "Classify the functions of a C source file");
  predict->add_option("-d,--data", pr.data_dir, "Extraction directory (vocabulary)")
      ->required();
  predict->add_option("-c,--checkpoint", pr.checkpoint)->required();
  predict->add_option("input", pr.input, "C source file, or - for standard input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract) {
      if (ex.data_dir.empty() && (ex.train.empty() || ex.valid.empty() || ex.test.empty())) {
        throw UsageError("extract needs --data-dir or all of --train, --valid, --test");
      }
      return cmd_extract(ex);
    }
    if (*train) return cmd_train(tr);
    if (*evaluate) return cmd_evaluate(ev);
    if (*predict) return cmd_predict(pr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const c2v::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
