#pragma once

#include <cstddef>
#include <functional>

namespace hlab {

/// Worker count for data-parallel kernels: HLAB_THREADS when set to a
/// positive integer, otherwise std::thread::hardware_concurrency().
std::size_t worker_count();

/// Splits [0, n) into at most worker_count() contiguous chunks and runs
/// body(chunk, begin, end) on each. Chunk boundaries depend only on n and
/// the worker count, so callers reducing per-chunk results in chunk order
/// get deterministic output.
void parallel_chunks(std::size_t n, std::size_t min_chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace hlab
