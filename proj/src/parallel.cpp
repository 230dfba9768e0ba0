#include "slowdiff/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace slowdiff::par {

namespace {
std::atomic<int> g_max_threads{0};

int hardware_default() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}
}  // namespace

int max_threads() {
  const int v = g_max_threads.load(std::memory_order_relaxed);
  return v > 0 ? v : hardware_default();
}

void set_max_threads(int n) { g_max_threads.store(n, std::memory_order_relaxed); }

void for_chunks(std::int64_t n, std::int64_t chunk_size,
                const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  const std::int64_t nchunks = (n + chunk_size - 1) / chunk_size;
  const int nthreads = static_cast<int>(std::min<std::int64_t>(max_threads(), nchunks));

  auto run_range = [&](std::int64_t c) {
    const std::int64_t b = c * chunk_size;
    fn(c, b, std::min(b + chunk_size, n));
  };

  if (nthreads <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) run_range(c);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= nchunks || failed.load(std::memory_order_relaxed)) return;
        try {
          run_range(c);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace slowdiff::par
