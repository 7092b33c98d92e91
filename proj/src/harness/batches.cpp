#include "c2v/harness/batches.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace c2v::harness {

std::vector<Batch> make_batches(const std::vector<EncodedBag>& bags, std::size_t batch_size,
                                Rng* shuffle) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  std::vector<std::size_t> order(bags.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle != nullptr) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(shuffle->below(i))]);
    }
  }

  std::vector<Batch> batches;
  for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
    const std::size_t end = std::min(order.size(), begin + batch_size);
    Batch b;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& bag = bags[order[i]];
      if (bag.contexts.empty()) throw std::invalid_argument("cannot batch an empty bag");
      b.width = std::max(b.width, bag.contexts.size());
    }
    const std::size_t rows = end - begin;
    b.contexts.assign(rows * b.width, EncodedContext{});
    b.mask.assign(rows * b.width, 0);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& bag = bags[order[begin + r]];
      std::copy(bag.contexts.begin(), bag.contexts.end(), b.contexts.begin() + r * b.width);
      std::fill_n(b.mask.begin() + r * b.width, bag.contexts.size(), 1);
      b.labels.push_back(bag.label);
      b.sample_index.push_back(order[begin + r]);
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

std::uint64_t epoch_seed(std::uint64_t seed, int epoch) {
  return derive_seed(seed, 0xe90c0000ULL + static_cast<std::uint64_t>(epoch));
}

}  // namespace c2v::harness
