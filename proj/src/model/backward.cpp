#include "c2v/model/backward.hpp"

#include <cmath>

namespace c2v::model {

double trace_loss(const ForwardTrace& trace, SymbolId label) {
  const double top = trace.logits.maxCoeff();
  const double lse = top + std::log((trace.logits.array() - top).exp().sum());
  return lse - trace.logits[label];
}

void backward(const ForwardTrace& t, SymbolId label, const ModelParams& params,
              double scale, ModelParams& grads) {
  const int d = params.dim();

  // Label softmax + cross-entropy.
  Vector d_logits = t.probabilities;
  d_logits[label] -= 1.0;
  d_logits *= scale;
  grads.tag_embeddings.noalias() += d_logits * t.code.transpose();
  const Vector d_code = params.tag_embeddings.transpose() * d_logits;

  // code = sum_k w_k h_k, h = dropped combined vectors.
  const Vector d_weights = t.dropped.transpose() * d_code;
  Matrix d_dropped = d_code * t.active_weights.transpose();

  // Attention softmax over scores s_k = <h_k, a>.
  const double mean = t.active_weights.dot(d_weights);
  const Vector d_scores = t.active_weights.cwiseProduct(
      (d_weights.array() - mean).matrix());
  grads.attention.noalias() += t.dropped * d_scores;
  d_dropped.noalias() += params.attention * d_scores.transpose();

  // Dropout, then tanh.
  const Matrix d_pre = (d_dropped.array() * t.dropout_scale.array() *
                        (1.0 - t.combined.array().square()))
                           .matrix();

  grads.combine.noalias() += d_pre * t.context_vectors.transpose();
  Matrix d_context(3 * d, d_pre.cols());
  d_context.noalias() = params.combine.transpose() * d_pre;

  for (Eigen::Index k = 0; k < d_context.cols(); ++k) {
    const auto& ctx = t.contexts[static_cast<std::size_t>(k)];
    grads.value_embeddings.row(ctx.start) += d_context.col(k).segment(0, d).transpose();
    grads.path_embeddings.row(ctx.path) += d_context.col(k).segment(d, d).transpose();
    grads.value_embeddings.row(ctx.end) += d_context.col(k).segment(2 * d, d).transpose();
  }
}

}  // namespace c2v::model
