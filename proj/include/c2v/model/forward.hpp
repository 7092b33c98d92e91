#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2v/corpus/corpus.hpp"
#include "c2v/model/params.hpp"
#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/rng.hpp"

namespace c2v::model {

using pathmine::EncodedContext;
using pathmine::SymbolId;

// [value_s ; path_j ; value_t] in R^{3d}. A PAD triplet yields zeros.
// Throws Error{IndexOutOfRange} for ids outside the tables.
Vector embed_context(const EncodedContext& ctx, const ModelParams& params);

// tanh(W c) for one context vector or for a 3d x n block of them.
Vector combine(const Vector& context, const ModelParams& params);
Matrix combine_all(const Matrix& contexts, const ModelParams& params);

// Softmax of <combined_i, a> over positions with mask[i] != 0; masked
// positions get exactly 0. combined has one column per position. Throws
// Error{AllMasked} if nothing is unmasked.
Vector attention_weights(const Matrix& combined, std::span<const std::uint8_t> mask,
                         const Vector& attention);

// sum_i weights_i * combined_i.
Vector code_vector(const Matrix& combined, const Vector& weights);

// Softmax over <v, tag_y>.
Vector predict_proba(const Vector& code, const ModelParams& params);

// -log q(label).
double cross_entropy(const Vector& probabilities, SymbolId label);

// Exact ties resolve to safe.
Label argmax_label(const Vector& probabilities);

// Numerically stable softmax (max-subtracted).
Vector softmax(const Vector& logits);

struct DropoutResult {
  Matrix output;
  Matrix scale;  // 0 for dropped coordinates, 1/(1-rate) for kept ones
};

// Inverted dropout: in training each coordinate is zeroed with probability
// `rate` and survivors are scaled by 1/(1-rate). Outside training, or at
// rate 0, the input passes through with an all-ones scale.
DropoutResult apply_dropout(const Matrix& combined, double rate, Rng& rng, bool training);

// Intermediate values of one bag's forward pass, kept for backward().
// Matrices have one column per unmasked context (`active` maps columns
// back to bag positions); `weights` has one entry per bag position.
struct ForwardTrace {
  std::vector<EncodedContext> contexts;  // unmasked contexts, column order
  std::vector<std::size_t> active;
  std::size_t positions = 0;
  Matrix context_vectors;  // 3d x m
  Matrix combined;         // d x m, before dropout
  Matrix dropout_scale;    // d x m
  Matrix dropped;          // d x m, what attention sees
  Vector scores;           // m
  Vector active_weights;   // m
  Vector weights;          // positions, zero where masked
  Vector code;             // d
  Vector logits;           // |tags|
  Vector probabilities;    // |tags|
};

struct DropoutSpec {
  double rate = 0.0;
  Rng* rng = nullptr;  // required when training with rate > 0
  bool training = false;
};

// Full forward pass for one bag. Positions whose mask entry is 0 (or, when
// mask is empty, PAD triplets) do not take part.
ForwardTrace forward(std::span<const EncodedContext> contexts,
                     std::span<const std::uint8_t> mask, const ModelParams& params,
                     const DropoutSpec& dropout = {});

}  // namespace c2v::model
