#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "c2v/harness/metrics.hpp"
#include "c2v/harness/trainer.hpp"

namespace c2v::harness {

// "epoch 3 train_loss 0.412345 val_accuracy 0.8125 ..." for train.log.
std::string epoch_text(const EpochLog& entry);

// One metrics.jsonl record: epoch, train_loss, val_accuracy,
// val_precision, val_recall, val_f1.
nlohmann::json epoch_json(const EpochLog& entry);

// Final evaluation report. Skipped samples are listed separately from the
// confusion counts.
nlohmann::json evaluation_report(const Metrics& metrics, std::size_t skipped,
                                 const std::string& vocab_digest);

// Human-readable metrics block (percentages and confusion counts).
std::string metrics_text(const Metrics& metrics);

}  // namespace c2v::harness
