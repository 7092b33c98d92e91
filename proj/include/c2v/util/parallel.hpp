#pragma once

#include <cstddef>
#include <functional>

namespace c2v {

// Number of workers to use when the caller passes 0.
std::size_t default_workers();

// Runs body(i) for every i in [0, count) on up to `workers` threads.
// Each index is visited exactly once; results must be written to
// per-index slots so the output order does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace c2v
