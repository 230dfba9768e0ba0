#pragma once

// Finite trigonometric polynomial  y(x) = c + sum_h  A_h cos(2 pi m_h x) + B_h sin(2 pi m_h x).
// This is the common currency between the Fourier layer, the Weyl-sum closed
// forms and the grid-scan kernels.

#include <cmath>
#include <cstdint>
#include <vector>

#include "slowdiff/numeric.hpp"

namespace slowdiff {

struct TrigHarmonic {
  std::int64_t m = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

struct TrigPoly {
  double constant = 0.0;
  std::vector<TrigHarmonic> harmonics;

  double eval(double x) const {
    double acc = constant;
    for (const auto& h : harmonics) {
      const FracParity fp = frac_mul_exact(h.m, x);
      const double ang = kTwoPi * fp.frac;
      acc += h.cos_coeff * std::cos(ang) + h.sin_coeff * std::sin(ang);
    }
    return acc;
  }

  std::int64_t max_harmonic() const {
    std::int64_t mx = 0;
    for (const auto& h : harmonics) mx = std::max(mx, h.m);
    return mx;
  }

  double coeff_l1() const {
    double s = 0.0;
    for (const auto& h : harmonics) s += std::fabs(h.cos_coeff) + std::fabs(h.sin_coeff);
    return s;
  }

  // y(x + shift) as a polynomial in x; each harmonic picks up phase 2 pi m shift.
  // shift is given as (integer_factor, base) so the phase can be reduced exactly.
  TrigPoly shifted(std::int64_t k, double base) const {
    TrigPoly out;
    out.constant = constant;
    out.harmonics.reserve(harmonics.size());
    for (const auto& h : harmonics) {
      const FracParity fp = frac_mul_exact(h.m * k, base);
      const double c = std::cos(kTwoPi * fp.frac);
      const double s = std::sin(kTwoPi * fp.frac);
      out.harmonics.push_back({h.m, h.cos_coeff * c + h.sin_coeff * s,
                               h.sin_coeff * c - h.cos_coeff * s});
    }
    return out;
  }
};

}  // namespace slowdiff
