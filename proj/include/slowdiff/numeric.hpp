#pragma once

// Shared low-level floating-point helpers. Everything here is branch-light and
// exact where exactness is cheap: fractional parts of integer*double products
// are recovered with an fma two-product, so phases of the form k*alpha mod 1
// stay accurate to ~1 ulp no matter how large k gets.

#include <cmath>
#include <cstdint>

namespace slowdiff {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// frac(k*a) in [0,1) plus the parity of floor(k*a).
// Requires |k*a| < 2^62 so the floor fits an int64.
struct FracParity {
  double frac;
  bool odd;
};

inline FracParity frac_mul_exact(std::int64_t k, double a) {
  const double kd = static_cast<double>(k);
  const double hi = kd * a;
  const double lo = std::fma(kd, a, -hi);  // exact residual of the product
  const double fl = std::floor(hi);
  double r = (hi - fl) + lo;  // hi - fl is exact (Sterbenz)
  std::int64_t fli = static_cast<std::int64_t>(fl);
  if (r < 0.0) {
    r += 1.0;
    fli -= 1;
  } else if (r >= 1.0) {
    r -= 1.0;
    fli += 1;
  }
  return {r, (fli & 1) != 0};
}

// sin(pi*(n+f)) and cos(pi*(n+f)) given f in [0,1) and the parity of n.
// The argument is folded into [-pi/2, pi/2] before calling libm.
inline double sinpi_frac(double f, bool odd) {
  // sin(pi f) = sin(pi (1-f)); 1-f is exact for f in (0.5, 1)
  const double s = std::sin(kPi * ((f <= 0.5) ? f : 1.0 - f));
  return odd ? -s : s;
}

inline double cospi_frac(double f, bool odd) {
  double c;
  if (f <= 0.5) {
    c = (f <= 0.25) ? std::cos(kPi * f) : std::sin(kPi * (0.5 - f));
  } else {
    c = (f >= 0.75) ? -std::cos(kPi * (1.0 - f)) : -std::sin(kPi * (f - 0.5));
  }
  return odd ? -c : c;
}

}  // namespace slowdiff
