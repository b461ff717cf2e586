// parallel.hpp
// Block-parallel trial execution. Results must be written to per-index slots;
// combined with per-trial RNG substreams this keeps every run bit-identical
// regardless of the worker count.

#pragma once

#include <cstdint>
#include <functional>

namespace rusim {

// Worker cap from RUS_SIM_THREADS (0 or unset = hardware concurrency).
int configured_worker_count();

// Runs block_fn(begin, end) over a partition of [0, n).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& block_fn);

}  // namespace rusim
