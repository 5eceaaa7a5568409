#pragma once

#include <cstddef>
#include <functional>

namespace rogonlab {

/// Worker count for data-parallel loops: hardware concurrency, capped by
/// the ROGONLAB_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on each,
/// possibly concurrently. Chunk boundaries depend only on n and the worker
/// count, and bodies write disjoint outputs, so results are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace rogonlab
