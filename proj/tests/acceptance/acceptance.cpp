// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
// Exit status: 1 if any criterion fails, 77 if every selected criterion was
// skipped, 0 otherwise. The at-scale Devign criteria run only when
// C2V_DEVIGN_DIR names a directory holding train.jsonl, valid.jsonl and
// test.jsonl.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "c2v/harness/trainer.hpp"
#include "c2v/model/forward.hpp"
#include "c2v/pathmine/md5.hpp"
#include "c2v/pathmine/paths.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Status::Pass : Status::Fail, std::move(detail)};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ------------------------------------------------------------- criteria

Outcome path_oracle() {
  const Stopwatch clock;
  c2v::Rng rng(20240601);
  const int trees = 2000;
  int matched = 0;
  for (int t = 0; t < trees; ++t) {
    const auto ast = c2v::testing::random_ast(rng, 2 + static_cast<int>(rng.below(11)));
    c2v::pathmine::MiningLimits limits;
    limits.max_length = 2 + static_cast<int>(rng.below(7));
    limits.max_width = 1 + static_cast<int>(rng.below(3));
    std::set<c2v::testing::PathKey> mined;
    for (const auto& p : c2v::pathmine::enumerate_paths(ast, limits)) {
      mined.insert(c2v::testing::key_of(p));
    }
    if (mined == c2v::testing::brute_force_paths(ast.root, limits.max_length, limits.max_width)) {
      ++matched;
    }
  }
  const double s = clock.seconds();
  return pass_if(matched == trees && s < 30.0,
                 std::to_string(matched) + "/" + std::to_string(trees) +
                     " random trees (<=12 nodes) match the LCA oracle; " + fmt("%.2f", s) +
                     " s (limit 30 s)");
}

Outcome gradient_check() {
  const Stopwatch clock;
  c2v::Rng rng(777);
  const int instances = 200;
  double worst = 0.0;
  std::size_t coords = 0;
  for (int i = 0; i < instances; ++i) {
    const auto params = c2v::testing::random_params(rng, 6, 5, 4, 0.8);
    const auto bag = c2v::testing::random_bag(rng, 6, 5, 5);
    const auto label = static_cast<c2v::pathmine::SymbolId>(rng.below(2));
    const auto check = c2v::testing::check_gradient(bag, label, params, 1e-5, 1e-6);
    worst = std::max(worst, check.worst_relative_error);
    coords += check.coordinates;
  }
  const double s = clock.seconds();
  return pass_if(worst < 1e-4 && s < 60.0,
                 std::to_string(instances) + " models (d=4), " + std::to_string(coords) +
                     " coordinates, worst relative error " + fmt("%.2e", worst) +
                     " (limit 1e-4, step 1e-5); " + fmt("%.2f", s) + " s (limit 60 s)");
}

Outcome normalization() {
  c2v::Rng rng(4242);
  const int passes = 10000;
  double worst_alpha = 0.0, worst_q = 0.0, worst_perm = 0.0;
  for (int i = 0; i < passes; ++i) {
    const int d = 2 + static_cast<int>(rng.below(15));
    const auto params = c2v::testing::random_params(rng, 12, 12, d, 1.5);
    auto bag = c2v::testing::random_bag(rng, 12, 12, 30);
    const auto t = c2v::model::forward(bag, {}, params);
    worst_alpha = std::max(worst_alpha, std::abs(t.weights.sum() - 1.0));
    worst_q = std::max(worst_q, std::abs(t.probabilities.sum() - 1.0));
    for (std::size_t k = bag.size(); k > 1; --k) std::swap(bag[k - 1], bag[rng.below(k)]);
    bag.resize(bag.size() + 1 + rng.below(10));
    const auto q2 = c2v::model::forward(bag, {}, params).probabilities;
    worst_perm = std::max(worst_perm, (t.probabilities - q2).cwiseAbs().maxCoeff());
  }
  return pass_if(worst_alpha < 1e-9 && worst_q < 1e-9 && worst_perm < 1e-12,
                 std::to_string(passes) + " passes: max |sum alpha - 1| " +
                     fmt("%.1e", worst_alpha) + ", max |sum q - 1| " + fmt("%.1e", worst_q) +
                     " (limit 1e-9); permute+pad max |dq| " + fmt("%.1e", worst_perm) +
                     " (limit 1e-12)");
}

Outcome md5_vectors() {
  const auto empty = c2v::pathmine::hash_path("");
  const auto abc = c2v::pathmine::hash_path("abc");
  return pass_if(empty == "d41d8cd98f00b204e9800998ecf8427e" &&
                     abc == "900150983cd24fb0d6963f7d28e17f72",
                 "\"\" -> " + empty + ", \"abc\" -> " + abc);
}

Outcome metric_fixture() {
  const auto f = c2v::testing::confusion_fixture(3, 1, 4, 2);
  const auto m = c2v::harness::evaluate(f.data, f.checkpoint);
  const bool ok = m.tp == 3 && m.fp == 1 && m.tn == 4 && m.fn == 2 &&
                  std::abs(m.accuracy - 0.7) <= 5e-5 && std::abs(m.precision - 0.75) <= 5e-5 &&
                  std::abs(m.recall - 0.6) <= 5e-5 && std::abs(m.f1 - 0.6667) <= 5e-5;
  return pass_if(ok, "accuracy " + fmt("%.4f", m.accuracy) + " precision " +
                         fmt("%.4f", m.precision) + " recall " + fmt("%.4f", m.recall) +
                         " f1 " + fmt("%.4f", m.f1) + " (tolerance 5e-5)");
}

// Runs extract + train + evaluate through the command-line tool with
// default settings.
struct PipelineRun {
  bool ok = false;
  double seconds = 0.0;
  fs::path data, model;
  std::string error;
};

PipelineRun run_pipeline(const fs::path& cli, const fs::path& inputs, const fs::path& out,
                         const std::string& extra_train = "") {
  PipelineRun r;
  fs::remove_all(out);
  fs::create_directories(out);
  r.data = out / "extracted";
  r.model = r.data / "model";
  const std::string log = " >> " + (out / "pipeline.log").string() + " 2>&1";
  const Stopwatch clock;
  const std::string steps[] = {
      cli.string() + " extract --data-dir " + inputs.string() + " --out " + r.data.string(),
      cli.string() + " train --data " + r.data.string() + extra_train,
      cli.string() + " evaluate --data " + r.data.string() + " --checkpoint " +
          (r.model / "checkpoint.bin").string(),
  };
  for (const auto& step : steps) {
    if (shell(step + log) != 0) {
      r.error = "command failed: " + step + " (see " + (out / "pipeline.log").string() + ")";
      return r;
    }
  }
  r.seconds = clock.seconds();
  r.ok = true;
  return r;
}

struct Synthetic {
  PipelineRun first, second;
  bool ran = false;
};

Synthetic& synthetic(const fs::path& cli, const fs::path& work) {
  static Synthetic s;
  if (s.ran) return s;
  s.ran = true;
  const fs::path inputs = work / "synthetic_inputs";
  fs::create_directories(inputs);
  const auto c = c2v::testing::synthetic_splits(1000, 31337);
  std::ofstream(inputs / "train.jsonl") << c2v::testing::to_jsonl(c.train);
  std::ofstream(inputs / "valid.jsonl") << c2v::testing::to_jsonl(c.validation);
  std::ofstream(inputs / "test.jsonl") << c2v::testing::to_jsonl(c.test);
  s.first = run_pipeline(cli, inputs, work / "synthetic_run1");
  s.second = run_pipeline(cli, inputs, work / "synthetic_run2");
  return s;
}

Outcome separability(const fs::path& cli, const fs::path& work) {
  const auto& run = synthetic(cli, work).first;
  if (!run.ok) return {Status::Fail, run.error};
  const auto report = json::parse(slurp(run.model / "report.json"));
  const double acc = report.at("accuracy").get<double>();

  std::vector<double> losses;
  std::ifstream log(run.model / "metrics.jsonl");
  for (std::string line; std::getline(log, line);) {
    losses.push_back(json::parse(line).at("train_loss").get<double>());
  }
  bool decreasing = losses.size() >= 5;
  for (std::size_t i = 1; i < 5 && i < losses.size(); ++i) {
    decreasing = decreasing && losses[i] < losses[i - 1];
  }
  return pass_if(acc >= 0.95 && run.seconds < 300.0,
                 "2000 functions, default config (" + std::to_string(losses.size()) +
                     " epochs): test accuracy " + fmt("%.4f", acc) + " (need >= 0.95); " +
                     fmt("%.1f", run.seconds) + " s end to end (limit 300 s); loss " +
                     (decreasing ? "strictly decreasing" : "NOT strictly decreasing") +
                     " over epochs 1-5");
}

Outcome determinism(const fs::path& cli, const fs::path& work) {
  const auto& s = synthetic(cli, work);
  if (!s.first.ok) return {Status::Fail, s.first.error};
  if (!s.second.ok) return {Status::Fail, s.second.error};
  const std::vector<fs::path> files = {
      "train.c2v", "valid.c2v", "test.c2v", "values.vocab", "paths.vocab", "tags.vocab",
      "skips.json", "model/checkpoint.bin", "model/metrics.jsonl", "model/report.json"};
  std::string differing;
  for (const auto& f : files) {
    if (slurp(s.first.data / f) != slurp(s.second.data / f)) differing += " " + f.string();
  }
  return pass_if(differing.empty(), differing.empty()
                                        ? std::to_string(files.size()) +
                                              " artifacts byte-identical across two runs"
                                        : "differs:" + differing);
}

// ---------------------------------------------------------------- Devign

const char* devign_dir() { return std::getenv("C2V_DEVIGN_DIR"); }

PipelineRun& devign_run(const fs::path& cli, const fs::path& work) {
  static PipelineRun r;
  static bool ran = false;
  if (!ran) {
    ran = true;
    r = run_pipeline(cli, devign_dir(), work / "devign");
  }
  return r;
}

Outcome devign_reproduction(const fs::path& cli, const fs::path& work) {
  if (devign_dir() == nullptr) {
    return {Status::Skip, "set C2V_DEVIGN_DIR to the CodeXGLUE Devign splits to run"};
  }
  const auto& run = devign_run(cli, work);
  if (!run.ok) return {Status::Fail, run.error};
  const auto pct = json::parse(slurp(run.model / "report.json")).at("percent");
  const std::pair<const char*, double> targets[] = {
      {"accuracy", 61.43}, {"precision", 57.50}, {"recall", 61.77}, {"f1", 59.56}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, want] : targets) {
    const double got = pct.at(name).get<double>();
    ok = ok && std::abs(got - want) <= 3.0;
    detail += std::string(name) + " " + fmt("%.2f", got) + " (published " + fmt("%.2f", want) + ") ";
  }
  return pass_if(ok, detail + "tolerance 3 points; " + fmt("%.0f", run.seconds) + " s");
}

Outcome skip_parity(const fs::path& cli, const fs::path& work) {
  if (devign_dir() == nullptr) {
    return {Status::Skip, "set C2V_DEVIGN_DIR to the CodeXGLUE Devign splits to run"};
  }
  const auto& run = devign_run(cli, work);
  if (!run.ok) return {Status::Fail, run.error};
  const auto skips = json::parse(slurp(run.data / "skips.json"));
  // Published post-skip counts: (vuln, safe).
  const std::tuple<const char*, double, double> targets[] = {
      {"train", 9987, 11809}, {"test", 1253, 1472}, {"valid", 1185, 1541}};

  // Kept vuln/safe per split, recounted from the C2V files.
  bool ok = !skips.at("skipped").empty();
  std::string detail = std::to_string(skips.at("skipped").size()) + " skipped; ";
  for (const auto& [split, want_vuln, want_safe] : targets) {
    std::ifstream in(run.data / (std::string(split) + ".c2v"));
    double vuln = 0, safe = 0;
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("vuln ", 0) == 0) ++vuln;
      if (line.rfind("safe ", 0) == 0) ++safe;
    }
    ok = ok && std::abs(vuln - want_vuln) <= 0.01 * want_vuln &&
         std::abs(safe - want_safe) <= 0.01 * want_safe;
    detail += std::string(split) + " " + fmt("%.0f", vuln) + "/" + fmt("%.0f", safe) +
              " (published " + fmt("%.0f", want_vuln) + "/" + fmt("%.0f", want_safe) + ") ";
  }
  return pass_if(ok, detail + "tolerance 1%");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> only, exclude;
  fs::path work = fs::temp_directory_path() / "c2v_acceptance";
  fs::path cli = C2V_CLI;
  app.add_option("--only", only, "Run only the named criteria");
  app.add_option("--exclude", exclude, "Skip the named criteria entirely");
  app.add_option("--work-dir", work, "Scratch directory for pipeline runs");
  app.add_option("--cli", cli, "Path to the c2v command-line tool");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"path-oracle-equivalence", path_oracle},
      {"gradient-correctness", gradient_check},
      {"normalization", normalization},
      {"md5-conformance", md5_vectors},
      {"metric-arithmetic", metric_fixture},
      {"synthetic-separability", [&] { return separability(cli, work); }},
      {"determinism", [&] { return determinism(cli, work); }},
      {"devign-reproduction", [&] { return devign_reproduction(cli, work); }},
      {"skip-parity", [&] { return skip_parity(cli, work); }},
  };

  int failed = 0, skipped = 0, ran = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    failed += o.status == Status::Fail;
    skipped += o.status == Status::Skip;
    std::cout << tag << "  " << name << "  " << o.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criteria selected\n";
    return 1;
  }
  if (failed > 0) return 1;
  return skipped == ran ? 77 : 0;
}
