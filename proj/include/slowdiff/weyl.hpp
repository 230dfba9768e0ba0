#pragma once

// Weyl sums W(N,x,alpha) = sum_{k=0}^{N-1} F(x + k alpha) over a circle
// rotation, their x-derivatives, and extremal scans over x.
//
// Two independent routes:
//  * direct summation of the orbit (the oracle),
//  * per-harmonic geometric series: W(N,.,alpha) is itself a trig polynomial
//    whose coefficients come from the Dirichlet sum D_m(N); near-resonant
//    harmonics (|1 - e^{2 pi i m alpha}| <= 1e-12) fall back to direct phase
//    accumulation for that harmonic.

#include <cstdint>

#include "slowdiff/circle.hpp"
#include "slowdiff/fourier.hpp"
#include "slowdiff/rotation.hpp"
#include "slowdiff/trig_poly.hpp"

namespace slowdiff {

struct WeylScanResult {
  std::int64_t N = 0;
  double max_abs_W = 0.0;
  double max_abs_Wprime = 0.0;
  double argmax_x = 0.0;  // grid point achieving max_abs_Wprime
  std::int64_t grid_size = 0;
  // extra reductions consumed by the invariant suite
  double mean_W = 0.0;
  double min_W = 0.0;
  double max_W = 0.0;
};

double weyl_sum_direct(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                       double x);
double weyl_deriv_direct(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                         double x);

/// Direct-summation derivative path (F replaced by its termwise derivative).
inline double weyl_deriv(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                         double x) {
  return weyl_deriv_direct(F, alpha, N, x);
}

/// Coefficients of W(N,.,alpha) as a trig polynomial (closed-form route).
TrigPoly weyl_poly(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N);
TrigPoly weyl_deriv_poly(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N);

double weyl_sum_closed(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                       double x);
double weyl_deriv_closed(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                         double x);

/// Scan grid sized for the harmonic content: max(4096, 64 * m_max).
std::int64_t weyl_grid_rule(std::int64_t max_harmonic);

/// Extrema of |W| and |W'| over the uniform grid {j/grid}; grid=0 applies the
/// rule above. Grids below 4*m_max are rejected as too coarse.
WeylScanResult weyl_extrema(const FourierSeries& F, const RotationNumber& alpha,
                            std::int64_t N, std::int64_t grid = 0);

}  // namespace slowdiff
