#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/rng.hpp"

namespace c2v::harness {

using pathmine::EncodedBag;
using pathmine::EncodedContext;
using pathmine::SymbolId;

// size() bags padded to a common width with PAD triplets; mask is 1 for
// real contexts and 0 for padding.
struct Batch {
  std::size_t width = 0;
  std::vector<EncodedContext> contexts;  // size() * width, row per bag
  std::vector<std::uint8_t> mask;        // same layout
  std::vector<SymbolId> labels;
  std::vector<std::size_t> sample_index;  // position in the source list

  std::size_t size() const { return labels.size(); }
  std::span<const EncodedContext> row(std::size_t i) const {
    return std::span(contexts).subspan(i * width, width);
  }
  std::span<const std::uint8_t> mask_row(std::size_t i) const {
    return std::span(mask).subspan(i * width, width);
  }
};

// Splits bags into batches of batch_size (the last may be smaller). With a
// shuffle rng the order is a Fisher-Yates permutation drawn from it;
// without one the corpus order is kept.
std::vector<Batch> make_batches(const std::vector<EncodedBag>& bags, std::size_t batch_size,
                                Rng* shuffle = nullptr);

// Seed for epoch-level shuffling: hash of (seed, epoch).
std::uint64_t epoch_seed(std::uint64_t seed, int epoch);

}  // namespace c2v::harness
