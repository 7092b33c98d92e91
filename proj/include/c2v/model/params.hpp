#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace c2v::model {

using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Learnable tensors of the path-attention network. Embedding tables are
// row-per-symbol; row 0 of the value and path tables is PAD and stays zero.
struct ModelParams {
  RowMatrix value_embeddings;  // |values| x d
  RowMatrix path_embeddings;   // |paths| x d
  Matrix combine;              // d x 3d, maps a context vector to d
  Vector attention;            // d
  RowMatrix tag_embeddings;    // |tags| x d

  int dim() const { return static_cast<int>(attention.size()); }

  // Same shapes, all zeros. Used for gradients and optimizer moments.
  ModelParams zeros_like() const;
  void set_zero();

  std::size_t parameter_count() const;

  // Applies f(tensor_of_this, tensor_of_others...) to the five tensors in a
  // fixed order.
  template <typename F, typename... Others>
  void zip(F&& f, Others&&... others) {
    f(value_embeddings, others.value_embeddings...);
    f(path_embeddings, others.path_embeddings...);
    f(combine, others.combine...);
    f(attention, others.attention...);
    f(tag_embeddings, others.tag_embeddings...);
  }
  template <typename F, typename... Others>
  void zip(F&& f, Others&&... others) const {
    f(value_embeddings, others.value_embeddings...);
    f(path_embeddings, others.path_embeddings...);
    f(combine, others.combine...);
    f(attention, others.attention...);
    f(tag_embeddings, others.tag_embeddings...);
  }

  bool same_shape(const ModelParams& other) const;
  friend bool operator==(const ModelParams& a, const ModelParams& b);
};

// Uniform in (-1/sqrt(d), 1/sqrt(d)) for every coordinate, PAD rows zeroed.
// Deterministic in seed.
ModelParams init_params(std::size_t value_count, std::size_t path_count,
                        std::size_t tag_count, int dim, std::uint64_t seed);

}  // namespace c2v::model
