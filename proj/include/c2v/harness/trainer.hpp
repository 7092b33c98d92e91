#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "c2v/harness/metrics.hpp"
#include "c2v/model/checkpoint.hpp"
#include "c2v/pathmine/paths.hpp"
#include "c2v/pathmine/vocab.hpp"

namespace c2v::harness {

using pathmine::EncodedDataset;
using pathmine::Vocabulary;

struct TrainConfig {
  int epochs = 20;
  std::size_t batch_size = 1024;
  int embedding_size = 128;
  double dropout_rate = 0.25;
  pathmine::MiningLimits limits;
  double learning_rate = 0.001;
  std::uint64_t seed = 1;
  std::size_t workers = 1;  // evaluation fan-out; never changes results

  // Throws std::invalid_argument. epochs may be 0 (returns the initial
  // model); every other size must be positive and dropout in [0, 1).
  void validate() const;

  // Everything except workers, which does not affect results.
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;  // mean per-sample loss over the epoch
  Metrics validation;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

struct TrainResult {
  model::Checkpoint best;
  int best_epoch = 0;
  Metrics best_validation;
  std::vector<EpochLog> log;
};

using EpochCallback = std::function<void(const EpochLog&)>;

// Trains for config.epochs epochs and keeps the parameters of the epoch
// with the highest validation F1 (earliest on ties). With epochs = 0 the
// freshly initialized model is returned. Both datasets must be encoded
// with `vocab` (Error{VocabMismatch} otherwise); an empty validation set
// is Error{EmptyEvaluationSet}.
TrainResult train(const EncodedDataset& train_set, const EncodedDataset& valid_set,
                  const Vocabulary& vocab, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

// Argmax inference with dropout off.
Metrics evaluate_params(const std::vector<pathmine::EncodedBag>& bags,
                        const model::ModelParams& params, std::size_t workers = 1);

// Checks the dataset's vocabulary digest against the checkpoint, then
// evaluates. Error{EmptyEvaluationSet} when there is nothing to score.
Metrics evaluate(const EncodedDataset& data, const model::Checkpoint& ckpt,
                 std::size_t workers = 1);

// The TrainConfig stored in a checkpoint's metadata.
TrainConfig checkpoint_config(const model::Checkpoint& ckpt);

}  // namespace c2v::harness
