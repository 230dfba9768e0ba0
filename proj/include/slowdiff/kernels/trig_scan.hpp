#pragma once

// Grid-scan kernels: evaluate a trig polynomial on the uniform grid {j/G},
// fill value arrays and reduce them (max|y| with argmax, min, max, sum).
//
// Two production backends share one numeric contract: a scalar reference
// kernel and an AVX2+FMA kernel, selected at runtime from CPU features and
// equivalence-tested against a plain std::sin/std::cos oracle. Grid phases are
// reduced exactly ((m*j) mod G in integers), and the angle-addition recurrence
// is resynchronized from libm every 1024 points, so both backends agree with
// the oracle to a few ulps per coefficient.
//
// All entry points run in deterministic fixed-size chunks: results are
// bit-identical for any thread count (within one backend).

#include <cstdint>

#include "slowdiff/trig_poly.hpp"

namespace slowdiff::kernels {

enum class Backend { Auto, Scalar, Avx2 };

void force_backend(Backend b);  // Backend::Auto restores CPU detection
Backend active_backend();       // resolved, never Auto
const char* backend_name();
bool avx2_available();

struct ScanStats {
  double max_abs = 0.0;
  std::int64_t argmax = 0;  // lowest grid index attaining max_abs
  double min_val = 0.0;
  double max_val = 0.0;
  double sum = 0.0;
};

/// out[j] = poly(j/G) for j in [0, G).
void scan_fill(const TrigPoly& poly, std::int64_t grid, double* out);

/// Reductions over the same grid values (no caller-visible buffer).
ScanStats scan_stats(const TrigPoly& poly, std::int64_t grid);

ScanStats reduce_stats(const double* y, std::int64_t n);

void abs_inplace(double* y, std::int64_t n);

struct PairMax {
  double value = 0.0;
  std::int64_t argmax = 0;
};

/// max_j (wa*p[j] + wb*q[j]) with lowest-index tie-break; p and q must be >= 0.
PairMax weighted_pair_max(const double* p, const double* q, std::int64_t n, double wa,
                          double wb);

// Test oracle: per-point std::sin/std::cos, no recurrence, no SIMD, no threads.
void scan_fill_reference(const TrigPoly& poly, std::int64_t grid, double* out);
ScanStats scan_stats_reference(const TrigPoly& poly, std::int64_t grid);

}  // namespace slowdiff::kernels
