#include "c2v/model/forward.hpp"

#include <cmath>
#include <limits>

#include "c2v/util/error.hpp"

namespace c2v::model {

namespace {

void check_row(const RowMatrix& table, SymbolId id, const char* what) {
  if (id < 0 || id >= table.rows()) {
    throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " id " + std::to_string(id) +
                                                " outside table of " +
                                                std::to_string(table.rows()));
  }
}

void write_context(const EncodedContext& ctx, const ModelParams& params,
                   Eigen::Ref<Vector> out) {
  const int d = params.dim();
  check_row(params.value_embeddings, ctx.start, "value");
  check_row(params.path_embeddings, ctx.path, "path");
  check_row(params.value_embeddings, ctx.end, "value");
  out.segment(0, d) = params.value_embeddings.row(ctx.start).transpose();
  out.segment(d, d) = params.path_embeddings.row(ctx.path).transpose();
  out.segment(2 * d, d) = params.value_embeddings.row(ctx.end).transpose();
}

}  // namespace

Vector embed_context(const EncodedContext& ctx, const ModelParams& params) {
  Vector out = Vector::Zero(3 * params.dim());
  if (ctx.is_pad()) return out;
  write_context(ctx, params, out);
  return out;
}

Vector combine(const Vector& context, const ModelParams& params) {
  return (params.combine * context).array().tanh().matrix();
}

Matrix combine_all(const Matrix& contexts, const ModelParams& params) {
  Matrix z(params.combine.rows(), contexts.cols());
  z.noalias() = params.combine * contexts;
  return z.array().tanh().matrix();
}

Vector softmax(const Vector& logits) {
  const double top = logits.maxCoeff();
  Vector e = (logits.array() - top).exp().matrix();
  return e / e.sum();
}

Vector attention_weights(const Matrix& combined, std::span<const std::uint8_t> mask,
                         const Vector& attention) {
  const auto n = static_cast<std::size_t>(combined.cols());
  auto active = [&](std::size_t i) { return mask.empty() || mask[i] != 0; };
  double top = -std::numeric_limits<double>::infinity();
  Vector scores = Vector::Zero(combined.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (!active(i)) continue;
    scores[static_cast<Eigen::Index>(i)] = combined.col(static_cast<Eigen::Index>(i)).dot(attention);
    top = std::max(top, scores[static_cast<Eigen::Index>(i)]);
  }
  if (top == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorKind::AllMasked, "every context position is masked");
  }
  Vector weights = Vector::Zero(combined.cols());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active(i)) continue;
    const auto k = static_cast<Eigen::Index>(i);
    weights[k] = std::exp(scores[k] - top);
    total += weights[k];
  }
  return weights / total;
}

Vector code_vector(const Matrix& combined, const Vector& weights) {
  return combined * weights;
}

Vector predict_proba(const Vector& code, const ModelParams& params) {
  return softmax(params.tag_embeddings * code);
}

double cross_entropy(const Vector& probabilities, SymbolId label) {
  return -std::log(probabilities[label]);
}

Label argmax_label(const Vector& probabilities) {
  return probabilities[1] > probabilities[0] ? Label::Vuln : Label::Safe;
}

DropoutResult apply_dropout(const Matrix& combined, double rate, Rng& rng, bool training) {
  if (!training || rate <= 0.0) {
    return {combined, Matrix::Ones(combined.rows(), combined.cols())};
  }
  const double keep_scale = 1.0 / (1.0 - rate);
  DropoutResult out{Matrix(combined.rows(), combined.cols()),
                    Matrix(combined.rows(), combined.cols())};
  for (Eigen::Index c = 0; c < combined.cols(); ++c) {
    for (Eigen::Index r = 0; r < combined.rows(); ++r) {
      const double s = rng.uniform() < rate ? 0.0 : keep_scale;
      out.scale(r, c) = s;
      out.output(r, c) = combined(r, c) * s;
    }
  }
  return out;
}

ForwardTrace forward(std::span<const EncodedContext> contexts,
                     std::span<const std::uint8_t> mask, const ModelParams& params,
                     const DropoutSpec& dropout) {
  ForwardTrace t;
  t.positions = contexts.size();
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const bool live = mask.empty() ? !contexts[i].is_pad() : mask[i] != 0;
    if (live) {
      t.active.push_back(i);
      t.contexts.push_back(contexts[i]);
    }
  }
  if (t.active.empty()) throw Error(ErrorKind::AllMasked, "bag has no unmasked contexts");

  const int d = params.dim();
  const auto m = static_cast<Eigen::Index>(t.active.size());
  t.context_vectors.resize(3 * d, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    write_context(t.contexts[static_cast<std::size_t>(k)], params, t.context_vectors.col(k));
  }
  t.combined = combine_all(t.context_vectors, params);

  if (dropout.training && dropout.rate > 0.0) {
    if (dropout.rng == nullptr) throw std::invalid_argument("dropout needs an rng");
    auto dr = apply_dropout(t.combined, dropout.rate, *dropout.rng, true);
    t.dropped = std::move(dr.output);
    t.dropout_scale = std::move(dr.scale);
  } else {
    t.dropped = t.combined;
    t.dropout_scale = Matrix::Ones(t.combined.rows(), t.combined.cols());
  }

  t.scores = t.dropped.transpose() * params.attention;
  t.active_weights = softmax(t.scores);
  t.weights = Vector::Zero(static_cast<Eigen::Index>(t.positions));
  for (Eigen::Index k = 0; k < m; ++k) {
    t.weights[static_cast<Eigen::Index>(t.active[static_cast<std::size_t>(k)])] =
        t.active_weights[k];
  }
  t.code = code_vector(t.dropped, t.active_weights);
  t.logits = params.tag_embeddings * t.code;
  t.probabilities = softmax(t.logits);
  return t;
}

}  // namespace c2v::model
