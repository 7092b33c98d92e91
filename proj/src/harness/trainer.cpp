#include "c2v/harness/trainer.hpp"

#include <stdexcept>

#include "c2v/harness/batches.hpp"
#include "c2v/model/backward.hpp"
#include "c2v/model/forward.hpp"
#include "c2v/util/error.hpp"
#include "c2v/util/parallel.hpp"

namespace c2v::harness {

namespace {

constexpr std::uint64_t kDropoutStream = 0xd20f;

void require_digest(const EncodedDataset& data, const std::string& expected,
                    const char* what) {
  if (data.vocab_digest != expected) {
    throw Error(ErrorKind::VocabMismatch, std::string(what) + " encoded with vocabulary " +
                                              data.vocab_digest + ", expected " + expected);
  }
}

nlohmann::json checkpoint_metadata(const TrainConfig& config, int best_epoch,
                                   const Metrics& validation) {
  return {{"config", config.to_json()},
          {"best_epoch", best_epoch},
          {"validation", validation.to_json()}};
}

}  // namespace

void TrainConfig::validate() const {
  limits.validate();
  if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (embedding_size <= 0) throw std::invalid_argument("embedding size must be positive");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw std::invalid_argument("dropout rate must be in [0, 1)");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"embedding_size", embedding_size},
          {"dropout_rate", dropout_rate},
          {"max_length", limits.max_length},
          {"max_width", limits.max_width},
          {"max_contexts", limits.max_contexts},
          {"mining_seed", limits.seed},
          {"learning_rate", learning_rate},
          {"seed", seed}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.embedding_size = j.at("embedding_size").get<int>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.limits.max_length = j.at("max_length").get<int>();
  c.limits.max_width = j.at("max_width").get<int>();
  c.limits.max_contexts = j.at("max_contexts").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.limits.seed = j.at("mining_seed").get<std::uint64_t>();
  return c;
}

TrainConfig checkpoint_config(const model::Checkpoint& ckpt) {
  try {
    return TrainConfig::from_json(ckpt.metadata.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("checkpoint config: ") + e.what());
  }
}

Metrics evaluate_params(const std::vector<pathmine::EncodedBag>& bags,
                        const model::ModelParams& params, std::size_t workers) {
  std::vector<Label> predicted(bags.size());
  parallel_for(bags.size(), workers, [&](std::size_t i) {
    const auto trace = model::forward(bags[i].contexts, {}, params);
    predicted[i] = model::argmax_label(trace.probabilities);
  });
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    const bool truth = bags[i].label == pathmine::Vocabulary::tag_id(Label::Vuln);
    const bool guess = predicted[i] == Label::Vuln;
    if (guess) {
      ++(truth ? tp : fp);
    } else {
      ++(truth ? fn : tn);
    }
  }
  return Metrics::from_counts(tp, fp, tn, fn);
}

Metrics evaluate(const EncodedDataset& data, const model::Checkpoint& ckpt,
                 std::size_t workers) {
  model::check_vocab(ckpt, data.vocab_digest);
  if (data.bags.empty()) throw Error(ErrorKind::EmptyEvaluationSet, "no samples to evaluate");
  return evaluate_params(data.bags, ckpt.params, workers);
}

TrainResult train(const EncodedDataset& train_set, const EncodedDataset& valid_set,
                  const Vocabulary& vocab, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  config.validate();
  const std::string digest = vocab.digest();
  require_digest(train_set, digest, "training set");
  require_digest(valid_set, digest, "validation set");
  if (valid_set.bags.empty()) {
    throw Error(ErrorKind::EmptyEvaluationSet, "validation set is empty");
  }

  model::ModelParams params =
      model::init_params(vocab.values.size(), vocab.paths.size(), vocab.tags.size(),
                         config.embedding_size, config.seed);
  model::AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  model::AdamState adam = model::AdamState::zeros_like(params, adam_config);
  model::ModelParams grads = params.zeros_like();

  TrainResult result;
  auto snapshot = [&](int epoch, const Metrics& validation) {
    result.best_epoch = epoch;
    result.best_validation = validation;
    result.best.metadata = checkpoint_metadata(config, epoch, validation);
    result.best.vocab_digest = digest;
    result.best.epoch = epoch;
    result.best.params = params;
    result.best.adam = adam;
  };

  if (config.epochs == 0) {
    snapshot(0, evaluate_params(valid_set.bags, params, config.workers));
    return result;
  }

  double best_f1 = -1.0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const std::uint64_t eseed = epoch_seed(config.seed, epoch);
    Rng shuffle(eseed);
    const auto batches = make_batches(train_set.bags, config.batch_size, &shuffle);
    Rng dropout_rng(derive_seed(eseed, kDropoutStream));
    const model::DropoutSpec dropout{config.dropout_rate, &dropout_rng, true};

    double loss_sum = 0.0;
    for (const auto& batch : batches) {
      grads.set_zero();
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (std::size_t r = 0; r < batch.size(); ++r) {
        const auto trace = model::forward(batch.row(r), batch.mask_row(r), params, dropout);
        loss_sum += model::trace_loss(trace, batch.labels[r]);
        model::backward(trace, batch.labels[r], params, scale, grads);
      }
      model::adam_step(params, grads, adam);
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss =
        train_set.bags.empty() ? 0.0 : loss_sum / static_cast<double>(train_set.bags.size());
    entry.validation = evaluate_params(valid_set.bags, params, config.workers);
    result.log.push_back(entry);
    if (entry.validation.f1 > best_f1) {
      best_f1 = entry.validation.f1;
      snapshot(epoch, entry.validation);
    }
    if (on_epoch) on_epoch(entry);
  }
  return result;
}

}  // namespace c2v::harness
