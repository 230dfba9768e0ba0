// AVX2+FMA variants of the grid kernels. This translation unit is compiled
// with -mavx2 -mfma; when the toolchain cannot do that it degrades to the
// scalar-forwarding stubs at the bottom and avx2_compiled() reports false.

#include <cstdint>

#include "slowdiff/kernels/trig_scan.hpp"
#include "slowdiff/numeric.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace slowdiff::kernels {

namespace {
constexpr std::int64_t kResyncBlock = 1024;

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}
}  // namespace

bool avx2_compiled() { return true; }

void fill_range_avx2(const TrigPoly& poly, std::int64_t grid, std::int64_t begin,
                     std::int64_t end, double* out) {
  std::fill(out + begin, out + end, poly.constant);
  const double inv_grid = 1.0 / static_cast<double>(grid);
  for (const auto& h : poly.harmonics) {
    const std::int64_t mu = ((h.m % grid) + grid) % grid;
    const std::int64_t mu4 = (4 * mu) % grid;
    const double step4 = kTwoPi * (static_cast<double>(mu4) * inv_grid);
    const __m256d cs4 = _mm256_set1_pd(std::cos(step4));
    const __m256d ss4 = _mm256_set1_pd(std::sin(step4));
    const __m256d av = _mm256_set1_pd(h.cos_coeff);
    const __m256d bv = _mm256_set1_pd(h.sin_coeff);

    for (std::int64_t blk = begin; blk < end; blk += kResyncBlock) {
      const std::int64_t stop = std::min(blk + kResyncBlock, end);
      std::int64_t j = blk;
      if (stop - j >= 4) {
        alignas(32) double c0[4], s0[4];
        for (int l = 0; l < 4; ++l) {
          const double ang = kTwoPi * (static_cast<double>(((j + l) * mu) % grid) * inv_grid);
          c0[l] = std::cos(ang);
          s0[l] = std::sin(ang);
        }
        __m256d c = _mm256_load_pd(c0);
        __m256d s = _mm256_load_pd(s0);
        for (; j + 4 <= stop; j += 4) {
          __m256d acc = _mm256_loadu_pd(out + j);
          acc = _mm256_fmadd_pd(av, c, acc);
          acc = _mm256_fmadd_pd(bv, s, acc);
          _mm256_storeu_pd(out + j, acc);
          const __m256d cn = _mm256_fmsub_pd(c, cs4, _mm256_mul_pd(s, ss4));
          s = _mm256_fmadd_pd(s, cs4, _mm256_mul_pd(c, ss4));
          c = cn;
        }
      }
      for (; j < stop; ++j) {
        const double ang = kTwoPi * (static_cast<double>((j * mu) % grid) * inv_grid);
        out[j] += h.cos_coeff * std::cos(ang) + h.sin_coeff * std::sin(ang);
      }
    }
  }
}

ScanStats reduce_range_avx2(const double* y, std::int64_t begin, std::int64_t end) {
  ScanStats st;
  st.max_abs = -1.0;
  st.argmax = begin;
  st.min_val = std::numeric_limits<double>::infinity();
  st.max_val = -std::numeric_limits<double>::infinity();

  std::int64_t j = begin;
  if (end - j >= 4) {
    __m256d vmaxabs = _mm256_set1_pd(-1.0);
    __m256i vargmax = _mm256_set1_epi64x(begin);
    __m256d vmin = _mm256_set1_pd(st.min_val);
    __m256d vmax = _mm256_set1_pd(st.max_val);
    __m256d vsum = _mm256_setzero_pd();
    __m256i vidx = _mm256_set_epi64x(begin + 3, begin + 2, begin + 1, begin);
    const __m256i vfour = _mm256_set1_epi64x(4);

    for (; j + 4 <= end; j += 4) {
      const __m256d v = _mm256_loadu_pd(y + j);
      const __m256d a = abs_pd(v);
      const __m256d gt = _mm256_cmp_pd(a, vmaxabs, _CMP_GT_OQ);
      vmaxabs = _mm256_blendv_pd(vmaxabs, a, gt);
      vargmax = _mm256_castpd_si256(_mm256_blendv_pd(
          _mm256_castsi256_pd(vargmax), _mm256_castsi256_pd(vidx), gt));
      vmin = _mm256_min_pd(vmin, v);
      vmax = _mm256_max_pd(vmax, v);
      vsum = _mm256_add_pd(vsum, v);
      vidx = _mm256_add_epi64(vidx, vfour);
    }

    alignas(32) double lane_abs[4], lane_min[4], lane_max[4], lane_sum[4];
    alignas(32) std::int64_t lane_idx[4];
    _mm256_store_pd(lane_abs, vmaxabs);
    _mm256_store_pd(lane_min, vmin);
    _mm256_store_pd(lane_max, vmax);
    _mm256_store_pd(lane_sum, vsum);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), vargmax);
    for (int l = 0; l < 4; ++l) {
      if (lane_abs[l] > st.max_abs ||
          (lane_abs[l] == st.max_abs && lane_idx[l] < st.argmax)) {
        st.max_abs = lane_abs[l];
        st.argmax = lane_idx[l];
      }
      st.min_val = std::min(st.min_val, lane_min[l]);
      st.max_val = std::max(st.max_val, lane_max[l]);
      st.sum += lane_sum[l];
    }
  }
  for (; j < end; ++j) {
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

PairMax pair_range_avx2(const double* p, const double* q, std::int64_t begin,
                        std::int64_t end, double wa, double wb) {
  PairMax best;
  best.value = -1.0;
  best.argmax = begin;

  std::int64_t j = begin;
  if (end - j >= 4) {
    const __m256d wav = _mm256_set1_pd(wa);
    const __m256d wbv = _mm256_set1_pd(wb);
    __m256d vbest = _mm256_set1_pd(-1.0);
    __m256i vbidx = _mm256_set1_epi64x(begin);
    __m256i vidx = _mm256_set_epi64x(begin + 3, begin + 2, begin + 1, begin);
    const __m256i vfour = _mm256_set1_epi64x(4);
    for (; j + 4 <= end; j += 4) {
      const __m256d vp = _mm256_loadu_pd(p + j);
      const __m256d vq = _mm256_loadu_pd(q + j);
      const __m256d v = _mm256_fmadd_pd(wav, vp, _mm256_mul_pd(wbv, vq));
      const __m256d gt = _mm256_cmp_pd(v, vbest, _CMP_GT_OQ);
      vbest = _mm256_blendv_pd(vbest, v, gt);
      vbidx = _mm256_castpd_si256(
          _mm256_blendv_pd(_mm256_castsi256_pd(vbidx), _mm256_castsi256_pd(vidx), gt));
      vidx = _mm256_add_epi64(vidx, vfour);
    }
    alignas(32) double lane_v[4];
    alignas(32) std::int64_t lane_i[4];
    _mm256_store_pd(lane_v, vbest);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_i), vbidx);
    for (int l = 0; l < 4; ++l) {
      if (lane_v[l] > best.value || (lane_v[l] == best.value && lane_i[l] < best.argmax)) {
        best.value = lane_v[l];
        best.argmax = lane_i[l];
      }
    }
  }
  for (; j < end; ++j) {
    const double v = wa * p[j] + wb * q[j];
    if (v > best.value) {
      best.value = v;
      best.argmax = j;
    }
  }
  return best;
}

void abs_range_avx2(double* y, std::int64_t begin, std::int64_t end) {
  std::int64_t j = begin;
  for (; j + 4 <= end; j += 4) {
    _mm256_storeu_pd(y + j, abs_pd(_mm256_loadu_pd(y + j)));
  }
  for (; j < end; ++j) y[j] = std::fabs(y[j]);
}

}  // namespace slowdiff::kernels

#else  // no AVX2 at compile time: forward to the scalar kernels via dispatch

#include <stdexcept>

namespace slowdiff::kernels {

bool avx2_compiled() { return false; }

void fill_range_avx2(const TrigPoly&, std::int64_t, std::int64_t, std::int64_t, double*) {
  throw std::logic_error("trig_scan: AVX2 kernel not compiled in");
}
ScanStats reduce_range_avx2(const double*, std::int64_t, std::int64_t) {
  throw std::logic_error("trig_scan: AVX2 kernel not compiled in");
}
PairMax pair_range_avx2(const double*, const double*, std::int64_t, std::int64_t, double,
                        double) {
  throw std::logic_error("trig_scan: AVX2 kernel not compiled in");
}
void abs_range_avx2(double*, std::int64_t, std::int64_t) {
  throw std::logic_error("trig_scan: AVX2 kernel not compiled in");
}

}  // namespace slowdiff::kernels

#endif
