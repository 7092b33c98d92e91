#include "c2v/harness/metrics.hpp"

#include <cmath>

namespace c2v::harness {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics Metrics::from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.tn = tn;
  m.fn = fn;
  m.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

double to_percent(double fraction) {
  // The nudge keeps values such as 0.61425 (stored as 0.614249999...) on
  // the half-up side.
  return std::floor(fraction * 10000.0 + 0.5 + 1e-7) / 100.0;
}

nlohmann::json Metrics::to_json() const {
  return {
      {"accuracy", accuracy},
      {"precision", precision},
      {"recall", recall},
      {"f1", f1},
      {"percent",
       {{"accuracy", to_percent(accuracy)},
        {"precision", to_percent(precision)},
        {"recall", to_percent(recall)},
        {"f1", to_percent(f1)}}},
      {"tp", tp},
      {"fp", fp},
      {"tn", tn},
      {"fn", fn},
  };
}

}  // namespace c2v::harness
