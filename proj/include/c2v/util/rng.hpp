#pragma once

#include <cstdint>
#include <random>

namespace c2v {

// std::mt19937_64 output is fully specified by the standard but the
// std::*_distribution adaptors are not, so the bounded draws below are done
// by hand to keep sampled bags and initial weights identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Uniform double in the open interval (lo, hi).
  double uniform_open(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace c2v
