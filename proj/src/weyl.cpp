#include "slowdiff/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "slowdiff/kernels/trig_scan.hpp"
#include "slowdiff/numeric.hpp"

namespace slowdiff {

namespace {

constexpr double kResonanceThreshold = 1e-12;  // on |1 - e^{2 pi i m alpha}|

struct Cplx {
  double re = 0.0;
  double im = 0.0;
};

// D_m(N) = sum_{k=0}^{N-1} e^{2 pi i k t},  t = frac(m alpha).
// Dirichlet form D = e^{i pi (N-1) t} sin(pi N t) / sin(pi t), with every
// angle reduced through exact integer*double products. Near-resonant t uses
// direct phase accumulation instead.
Cplx dirichlet_sum(double t, std::int64_t N) {
  if (N == 0) return {0.0, 0.0};
  const double s1 = sinpi_frac(t, false);
  if (2.0 * std::fabs(s1) <= kResonanceThreshold) {
    Cplx d;
    for (std::int64_t k = 0; k < N; ++k) {
      const FracParity fp = frac_mul_exact(k, t);
      const double ang = kTwoPi * fp.frac;
      d.re += std::cos(ang);
      d.im += std::sin(ang);
    }
    return d;
  }
  const FracParity nt = frac_mul_exact(N, t);
  const FracParity n1t = frac_mul_exact(N - 1, t);
  const double mag = sinpi_frac(nt.frac, nt.odd) / s1;
  return {mag * cospi_frac(n1t.frac, n1t.odd), mag * sinpi_frac(n1t.frac, n1t.odd)};
}

TrigPoly weyl_poly_of(const TrigPoly& f, double alpha, std::int64_t N) {
  TrigPoly out;
  out.constant = static_cast<double>(N) * f.constant;
  out.harmonics.reserve(f.harmonics.size());
  for (const auto& h : f.harmonics) {
    const double t = frac_mul_exact(h.m, alpha).frac;
    const Cplx d = dirichlet_sum(t, N);
    // a cos + b sin summed over the orbit: (a,b) -> (a P + b Q, b P - a Q)
    out.harmonics.push_back({h.m, h.cos_coeff * d.re + h.sin_coeff * d.im,
                             h.sin_coeff * d.re - h.cos_coeff * d.im});
  }
  return out;
}

double direct_sum(const TrigPoly& f, double alpha, std::int64_t N, double x) {
  if (N < 0) throw std::invalid_argument("weyl: N must be >= 0");
  double acc = 0.0;
  for (std::int64_t k = 0; k < N; ++k) {
    const double xk = reduce01(x + frac_mul_exact(k, alpha).frac);
    acc += f.eval(xk);
  }
  return acc;
}

}  // namespace

double weyl_sum_direct(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                       double x) {
  return direct_sum(F.as_poly(), alpha.value(), N, x);
}

double weyl_deriv_direct(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                         double x) {
  return direct_sum(F.derivative().as_poly(), alpha.value(), N, x);
}

TrigPoly weyl_poly(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N) {
  if (N < 0) throw std::invalid_argument("weyl: N must be >= 0");
  return weyl_poly_of(F.as_poly(), alpha.value(), N);
}

TrigPoly weyl_deriv_poly(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N) {
  if (N < 0) throw std::invalid_argument("weyl: N must be >= 0");
  return weyl_poly_of(F.derivative().as_poly(), alpha.value(), N);
}

double weyl_sum_closed(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                       double x) {
  return weyl_poly(F, alpha, N).eval(x);
}

double weyl_deriv_closed(const FourierSeries& F, const RotationNumber& alpha, std::int64_t N,
                         double x) {
  return weyl_deriv_poly(F, alpha, N).eval(x);
}

std::int64_t weyl_grid_rule(std::int64_t max_harmonic) {
  return std::max<std::int64_t>(4096, 64 * max_harmonic);
}

WeylScanResult weyl_extrema(const FourierSeries& F, const RotationNumber& alpha,
                            std::int64_t N, std::int64_t grid) {
  const std::int64_t m_max = F.max_harmonic();
  if (grid == 0) grid = weyl_grid_rule(m_max);
  if (grid < std::max<std::int64_t>(4, 4 * m_max)) {
    throw std::invalid_argument("weyl_extrema: grid too coarse for the stored harmonics");
  }

  const kernels::ScanStats w = kernels::scan_stats(weyl_poly(F, alpha, N), grid);
  const kernels::ScanStats wp = kernels::scan_stats(weyl_deriv_poly(F, alpha, N), grid);

  WeylScanResult r;
  r.N = N;
  r.grid_size = grid;
  r.max_abs_W = w.max_abs;
  r.max_abs_Wprime = wp.max_abs;
  r.argmax_x = static_cast<double>(wp.argmax) / static_cast<double>(grid);
  r.mean_W = w.sum / static_cast<double>(grid);
  r.min_W = w.min_val;
  r.max_W = w.max_val;
  return r;
}

}  // namespace slowdiff
