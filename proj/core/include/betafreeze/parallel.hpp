#pragma once

#include <cstddef>
#include <functional>

namespace betafreeze {

// Worker count: hardware concurrency capped by the BETAFREEZE_THREADS
// environment variable (positive integer).
std::size_t worker_count();

// Splits [0, n) into fixed-size chunks and runs fn(begin, end, chunk_index)
// on a worker pool. Chunk boundaries depend only on (n, chunk_size), so any
// per-chunk random substream derivation gives results independent of the
// worker count. fn must write to disjoint state per chunk.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace betafreeze
