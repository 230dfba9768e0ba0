#pragma once

// Deterministic chunked parallelism. Work is split into fixed-size chunks
// (independent of the thread count); callers merge per-chunk results in chunk
// order, so outputs are bit-identical for any number of threads.

#include <cstdint>
#include <functional>

namespace slowdiff::par {

inline constexpr std::int64_t kChunk = 1 << 16;

int max_threads();
void set_max_threads(int n);  // n <= 0 restores the hardware default

// Calls fn(chunk_index, begin, end) for every chunk of [0, n); fn must be safe
// to call concurrently for distinct chunks.
void for_chunks(std::int64_t n, std::int64_t chunk_size,
                const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

inline void for_chunks(std::int64_t n,
                       const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  for_chunks(n, kChunk, fn);
}

}  // namespace slowdiff::par
