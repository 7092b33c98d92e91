#include "fixtures.hpp"

namespace c2v::testing {

ConfusionFixture confusion_fixture(std::size_t tp, std::size_t fp, std::size_t tn,
                                   std::size_t fn) {
  using pathmine::EncodedBag;
  ConfusionFixture f;
  f.checkpoint.vocab_digest = "00000000000000000000000000c0ffee";
  f.data.vocab_digest = f.checkpoint.vocab_digest;
  auto& p = f.checkpoint.params;
  p.value_embeddings = model::RowMatrix::Zero(4, 1);
  p.value_embeddings(2, 0) = 1.0;
  p.value_embeddings(3, 0) = -1.0;
  p.path_embeddings = model::RowMatrix::Zero(3, 1);
  p.combine = model::Matrix::Zero(1, 3);
  p.combine(0, 0) = 1.0;
  p.attention = model::Vector::Ones(1);
  p.tag_embeddings = model::RowMatrix::Zero(2, 1);
  p.tag_embeddings(0, 0) = -1.0;
  p.tag_embeddings(1, 0) = 1.0;
  f.checkpoint.adam = model::AdamState::zeros_like(p);
  f.checkpoint.metadata = {{"fixture", true}};

  struct Want {
    std::size_t count;
    pathmine::SymbolId label;
    pathmine::SymbolId value;
  };
  Want wants[] = {{tp, 1, 2}, {fp, 0, 2}, {tn, 0, 3}, {fn, 1, 3}};
  std::int64_t id = 0;
  for (bool left = true; left;) {
    left = false;
    for (auto& w : wants) {
      if (w.count == 0) continue;
      --w.count;
      left = true;
      f.data.bags.push_back(EncodedBag{id++, w.label, {{w.value, 2, 1}, {1, 1, 1}}});
    }
  }
  return f;
}

}  // namespace c2v::testing
