#pragma once

#include <cstddef>

#include "c2v/model/checkpoint.hpp"
#include "c2v/pathmine/vocab.hpp"

namespace c2v::testing {

struct ConfusionFixture {
  pathmine::EncodedDataset data;
  model::Checkpoint checkpoint;
};

// A one-dimensional model that predicts vuln exactly for bags whose first
// value id is 2, plus a dataset with the requested confusion counts. The
// bags are interleaved so that no class sits in one contiguous block.
ConfusionFixture confusion_fixture(std::size_t tp, std::size_t fp, std::size_t tn,
                                   std::size_t fn);

}  // namespace c2v::testing
