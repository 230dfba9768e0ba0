// Scalar kernels, the reference oracle, and runtime backend dispatch.

#include "slowdiff/kernels/trig_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "slowdiff/numeric.hpp"
#include "slowdiff/parallel.hpp"

namespace slowdiff::kernels {

// Implemented in trig_scan_avx2.cpp (compiled with -mavx2 -mfma when available).
bool avx2_compiled();
void fill_range_avx2(const TrigPoly& poly, std::int64_t grid, std::int64_t begin,
                     std::int64_t end, double* out);
ScanStats reduce_range_avx2(const double* y, std::int64_t begin, std::int64_t end);
PairMax pair_range_avx2(const double* p, const double* q, std::int64_t begin,
                        std::int64_t end, double wa, double wb);
void abs_range_avx2(double* y, std::int64_t begin, std::int64_t end);

namespace {

constexpr std::int64_t kResyncBlock = 1024;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

// ---------------------------------------------------------------------------
// scalar kernels
// ---------------------------------------------------------------------------

void fill_range_scalar(const TrigPoly& poly, std::int64_t grid, std::int64_t begin,
                       std::int64_t end, double* out) {
  std::fill(out + begin, out + end, poly.constant);
  const double inv_grid = 1.0 / static_cast<double>(grid);
  for (const auto& h : poly.harmonics) {
    const std::int64_t mu = ((h.m % grid) + grid) % grid;
    const double step_ang = kTwoPi * (static_cast<double>(mu) * inv_grid);
    const double cs = std::cos(step_ang);
    const double ss = std::sin(step_ang);
    const double a = h.cos_coeff;
    const double b = h.sin_coeff;
    for (std::int64_t blk = begin; blk < end; blk += kResyncBlock) {
      const std::int64_t stop = std::min(blk + kResyncBlock, end);
      const double ang0 = kTwoPi * (static_cast<double>((blk * mu) % grid) * inv_grid);
      double c = std::cos(ang0);
      double s = std::sin(ang0);
      for (std::int64_t j = blk; j < stop; ++j) {
        out[j] += a * c + b * s;
        const double cn = c * cs - s * ss;
        s = s * cs + c * ss;
        c = cn;
      }
    }
  }
}

ScanStats reduce_range_scalar(const double* y, std::int64_t begin, std::int64_t end) {
  ScanStats st;
  st.max_abs = -1.0;
  st.argmax = begin;
  st.min_val = std::numeric_limits<double>::infinity();
  st.max_val = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = begin; j < end; ++j) {
    const double v = y[j];
    const double a = std::fabs(v);
    if (a > st.max_abs) {
      st.max_abs = a;
      st.argmax = j;
    }
    st.min_val = std::min(st.min_val, v);
    st.max_val = std::max(st.max_val, v);
    st.sum += v;
  }
  return st;
}

PairMax pair_range_scalar(const double* p, const double* q, std::int64_t begin,
                          std::int64_t end, double wa, double wb) {
  PairMax best;
  best.value = -1.0;
  best.argmax = begin;
  for (std::int64_t j = begin; j < end; ++j) {
    const double v = wa * p[j] + wb * q[j];
    if (v > best.value) {
      best.value = v;
      best.argmax = j;
    }
  }
  return best;
}

void abs_range_scalar(double* y, std::int64_t begin, std::int64_t end) {
  for (std::int64_t j = begin; j < end; ++j) y[j] = std::fabs(y[j]);
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

std::atomic<Backend> g_forced{Backend::Auto};

Backend env_default() {
  if (const char* e = std::getenv("SLOWDIFF_KERNEL")) {
    if (std::strcmp(e, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(e, "avx2") == 0) return Backend::Avx2;
  }
  return Backend::Auto;
}

Backend resolve() {
  Backend b = g_forced.load(std::memory_order_relaxed);
  if (b == Backend::Auto) b = env_default();
  if (b == Backend::Auto) {
    b = (avx2_compiled() && cpu_has_avx2()) ? Backend::Avx2 : Backend::Scalar;
  }
  if (b == Backend::Avx2 && !(avx2_compiled() && cpu_has_avx2())) {
    throw std::runtime_error("trig_scan: AVX2 backend requested but not available");
  }
  return b;
}

bool use_avx2() { return resolve() == Backend::Avx2; }

void merge_stats(ScanStats& acc, const ScanStats& chunk, bool first) {
  if (first) {
    acc = chunk;
    return;
  }
  if (chunk.max_abs > acc.max_abs) {  // earlier chunk wins ties
    acc.max_abs = chunk.max_abs;
    acc.argmax = chunk.argmax;
  }
  acc.min_val = std::min(acc.min_val, chunk.min_val);
  acc.max_val = std::max(acc.max_val, chunk.max_val);
  acc.sum += chunk.sum;
}

thread_local std::vector<double> g_scratch;

}  // namespace

void force_backend(Backend b) { g_forced.store(b, std::memory_order_relaxed); }

Backend active_backend() { return resolve(); }

const char* backend_name() { return use_avx2() ? "avx2" : "scalar"; }

bool avx2_available() { return avx2_compiled() && cpu_has_avx2(); }

void scan_fill(const TrigPoly& poly, std::int64_t grid, double* out) {
  if (grid < 1) throw std::invalid_argument("scan_fill: grid must be >= 1");
  const bool vec = use_avx2();
  if (grid <= par::kChunk) {  // single chunk: skip the dispatch machinery
    if (vec) {
      fill_range_avx2(poly, grid, 0, grid, out);
    } else {
      fill_range_scalar(poly, grid, 0, grid, out);
    }
    return;
  }
  par::for_chunks(grid, [&](std::int64_t, std::int64_t b, std::int64_t e) {
    if (vec) {
      fill_range_avx2(poly, grid, b, e, out);
    } else {
      fill_range_scalar(poly, grid, b, e, out);
    }
  });
}

ScanStats reduce_stats(const double* y, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reduce_stats: empty range");
  const bool vec = use_avx2();
  if (n <= par::kChunk) {
    return vec ? reduce_range_avx2(y, 0, n) : reduce_range_scalar(y, 0, n);
  }
  const std::int64_t nchunks = (n + par::kChunk - 1) / par::kChunk;
  std::vector<ScanStats> partial(static_cast<size_t>(nchunks));
  par::for_chunks(n, [&](std::int64_t c, std::int64_t b, std::int64_t e) {
    partial[static_cast<size_t>(c)] =
        vec ? reduce_range_avx2(y, b, e) : reduce_range_scalar(y, b, e);
  });
  ScanStats acc;
  for (std::int64_t c = 0; c < nchunks; ++c) merge_stats(acc, partial[static_cast<size_t>(c)], c == 0);
  return acc;
}

ScanStats scan_stats(const TrigPoly& poly, std::int64_t grid) {
  g_scratch.resize(static_cast<size_t>(grid));
  scan_fill(poly, grid, g_scratch.data());
  return reduce_stats(g_scratch.data(), grid);
}

void abs_inplace(double* y, std::int64_t n) {
  const bool vec = use_avx2();
  if (n <= par::kChunk) {
    if (vec) {
      abs_range_avx2(y, 0, n);
    } else {
      abs_range_scalar(y, 0, n);
    }
    return;
  }
  par::for_chunks(n, [&](std::int64_t, std::int64_t b, std::int64_t e) {
    if (vec) {
      abs_range_avx2(y, b, e);
    } else {
      abs_range_scalar(y, b, e);
    }
  });
}

PairMax weighted_pair_max(const double* p, const double* q, std::int64_t n, double wa,
                          double wb) {
  if (n < 1) throw std::invalid_argument("weighted_pair_max: empty range");
  const bool vec = use_avx2();
  if (n <= par::kChunk) {
    return vec ? pair_range_avx2(p, q, 0, n, wa, wb) : pair_range_scalar(p, q, 0, n, wa, wb);
  }
  const std::int64_t nchunks = (n + par::kChunk - 1) / par::kChunk;
  std::vector<PairMax> partial(static_cast<size_t>(nchunks));
  par::for_chunks(n, [&](std::int64_t c, std::int64_t b, std::int64_t e) {
    partial[static_cast<size_t>(c)] =
        vec ? pair_range_avx2(p, q, b, e, wa, wb) : pair_range_scalar(p, q, b, e, wa, wb);
  });
  PairMax best = partial[0];
  for (std::int64_t c = 1; c < nchunks; ++c) {
    if (partial[static_cast<size_t>(c)].value > best.value) best = partial[static_cast<size_t>(c)];
  }
  return best;
}

// ---------------------------------------------------------------------------
// reference oracle
// ---------------------------------------------------------------------------

void scan_fill_reference(const TrigPoly& poly, std::int64_t grid, double* out) {
  const double inv_grid = 1.0 / static_cast<double>(grid);
  for (std::int64_t j = 0; j < grid; ++j) {
    double acc = poly.constant;
    for (const auto& h : poly.harmonics) {
      const std::int64_t mu = ((h.m % grid) + grid) % grid;
      const double ang = kTwoPi * (static_cast<double>((j * mu) % grid) * inv_grid);
      acc += h.cos_coeff * std::cos(ang) + h.sin_coeff * std::sin(ang);
    }
    out[j] = acc;
  }
}

ScanStats scan_stats_reference(const TrigPoly& poly, std::int64_t grid) {
  std::vector<double> y(static_cast<size_t>(grid));
  scan_fill_reference(poly, grid, y.data());
  return reduce_range_scalar(y.data(), 0, grid);
}

}  // namespace slowdiff::kernels
