#include "c2v/harness/report.hpp"

#include <cstdio>

namespace c2v::harness {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::string epoch_text(const EpochLog& e) {
  const auto& m = e.validation;
  return "epoch " + std::to_string(e.epoch) + " train_loss " + fixed(e.train_loss, 6) +
         " val_accuracy " + fixed(m.accuracy, 4) + " val_precision " + fixed(m.precision, 4) +
         " val_recall " + fixed(m.recall, 4) + " val_f1 " + fixed(m.f1, 4);
}

nlohmann::json epoch_json(const EpochLog& e) {
  return {{"epoch", e.epoch},
          {"train_loss", e.train_loss},
          {"val_accuracy", e.validation.accuracy},
          {"val_precision", e.validation.precision},
          {"val_recall", e.validation.recall},
          {"val_f1", e.validation.f1}};
}

nlohmann::json evaluation_report(const Metrics& metrics, std::size_t skipped,
                                 const std::string& vocab_digest) {
  auto j = metrics.to_json();
  j["scored"] = metrics.total();
  j["skipped"] = skipped;
  j["vocab_digest"] = vocab_digest;
  return j;
}

std::string metrics_text(const Metrics& m) {
  return "accuracy  " + fixed(to_percent(m.accuracy), 2) + "\n" +
         "precision " + fixed(to_percent(m.precision), 2) + "\n" +
         "recall    " + fixed(to_percent(m.recall), 2) + "\n" +
         "f1        " + fixed(to_percent(m.f1), 2) + "\n" +
         "tp " + std::to_string(m.tp) + " fp " + std::to_string(m.fp) + " tn " +
         std::to_string(m.tn) + " fn " + std::to_string(m.fn) + "\n";
}

}  // namespace c2v::harness
