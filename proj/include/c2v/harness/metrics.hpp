#pragma once

#include <cstddef>

#include <nlohmann/json.hpp>

namespace c2v::harness {

// Binary classification metrics with vuln as the positive class. Zero
// denominators yield 0 for precision, recall and F1.
struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn);

  std::size_t total() const { return tp + fp + tn + fn; }

  // {"accuracy":..,"precision":..,"recall":..,"f1":..,
  //  "percent":{...two decimals...},"tp":..,"fp":..,"tn":..,"fn":..}
  nlohmann::json to_json() const;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// Fraction to percent with two decimals, rounding halves up.
double to_percent(double fraction);

}  // namespace c2v::harness
