#pragma once

#include <cstdint>

#include "c2v/model/params.hpp"

namespace c2v::model {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  ModelParams first_moment;
  ModelParams second_moment;
  std::int64_t step = 0;

  static AdamState zeros_like(const ModelParams& params, const AdamConfig& config = {});
};

// One bias-corrected Adam update over every coordinate:
//   t += 1; m = b1 m + (1-b1) g; v = b2 v + (1-b2) g^2;
//   theta -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state);

}  // namespace c2v::model
