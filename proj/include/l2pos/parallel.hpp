#pragma once

// Deterministic parallel chunking: work splits into a fixed number of chunks
// regardless of thread count, so per-chunk partial results can be merged in
// chunk order and outputs stay byte-identical for any L2POS_THREADS value.

#include <cstdint>
#include <functional>

namespace l2pos {

// L2POS_THREADS, clamped to [1, hardware]; defaults to min(hardware, 8).
int thread_count();

// fn(chunk, begin, end) over [0, count) split into nchunks contiguous ranges.
void parallel_chunks(std::int64_t count, int nchunks,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

} // namespace l2pos
