#include "c2v/model/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace c2v::model {

AdamState AdamState::zeros_like(const ModelParams& params, const AdamConfig& config) {
  return AdamState{config, params.zeros_like(), params.zeros_like(), 0};
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state) {
  if (!params.same_shape(grads) || !params.same_shape(state.first_moment)) {
    throw std::invalid_argument("adam_step: tensor shapes differ");
  }
  const auto& c = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  params.zip(
      [&](auto& theta, const auto& g, auto& m, auto& v) {
        m.array() = c.beta1 * m.array() + (1.0 - c.beta1) * g.array();
        v.array() = c.beta2 * v.array() + (1.0 - c.beta2) * g.array().square();
        theta.array() -= c.learning_rate * (m.array() / correction1) /
                         ((v.array() / correction2).sqrt() + c.epsilon);
      },
      grads, state.first_moment, state.second_moment);
}

}  // namespace c2v::model
