#include "c2v/model/params.hpp"

#include <cmath>
#include <stdexcept>

#include "c2v/util/rng.hpp"

namespace c2v::model {

ModelParams ModelParams::zeros_like() const {
  ModelParams z;
  z.value_embeddings = RowMatrix::Zero(value_embeddings.rows(), value_embeddings.cols());
  z.path_embeddings = RowMatrix::Zero(path_embeddings.rows(), path_embeddings.cols());
  z.combine = Matrix::Zero(combine.rows(), combine.cols());
  z.attention = Vector::Zero(attention.size());
  z.tag_embeddings = RowMatrix::Zero(tag_embeddings.rows(), tag_embeddings.cols());
  return z;
}

void ModelParams::set_zero() {
  zip([](auto& t) { t.setZero(); });
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  zip([&](const auto& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

bool ModelParams::same_shape(const ModelParams& other) const {
  bool same = true;
  zip([&](const auto& a, const auto& b) {
    same = same && a.rows() == b.rows() && a.cols() == b.cols();
  }, other);
  return same;
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  if (!a.same_shape(b)) return false;
  bool equal = true;
  a.zip([&](const auto& x, const auto& y) { equal = equal && x == y; }, b);
  return equal;
}

ModelParams init_params(std::size_t value_count, std::size_t path_count,
                        std::size_t tag_count, int dim, std::uint64_t seed) {
  if (dim <= 0) throw std::invalid_argument("embedding size must be positive");
  if (value_count < 2 || path_count < 2 || tag_count < 1) {
    throw std::invalid_argument("vocabulary sizes must cover the reserved ids");
  }
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  Rng rng(derive_seed(seed, 0x1417));
  auto fill = [&](auto& t) {
    // Row-major traversal regardless of storage order.
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.cols(); ++c) t(r, c) = rng.uniform_open(-bound, bound);
    }
  };

  ModelParams p;
  p.value_embeddings.resize(static_cast<Eigen::Index>(value_count), dim);
  p.path_embeddings.resize(static_cast<Eigen::Index>(path_count), dim);
  p.combine.resize(dim, 3 * dim);
  p.attention.resize(dim);
  p.tag_embeddings.resize(static_cast<Eigen::Index>(tag_count), dim);
  fill(p.value_embeddings);
  fill(p.path_embeddings);
  fill(p.combine);
  fill(p.attention);
  fill(p.tag_embeddings);
  p.value_embeddings.row(0).setZero();
  p.path_embeddings.row(0).setZero();
  return p;
}

}  // namespace c2v::model
