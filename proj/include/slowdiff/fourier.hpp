#pragma once

// 1-periodic trigonometric polynomials F(x) = c0 + sum a_m cos(2 pi m x) + b_m sin(2 pi m x),
// with termwise derivative access. Harmonic indices are strictly increasing.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "slowdiff/trig_poly.hpp"

namespace slowdiff {

struct FourierHarmonic {
  std::int64_t m = 1;
  double a = 0.0;  // cosine coefficient
  double b = 0.0;  // sine coefficient
};

class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(double c0, std::vector<FourierHarmonic> harmonics)
      : c0_(c0), harmonics_(std::move(harmonics)) {
    validate();
  }

  static FourierSeries zero() { return FourierSeries(); }
  static FourierSeries constant(double c) { return FourierSeries(c, {}); }
  static FourierSeries sine(std::int64_t m = 1, double amp = 1.0) {
    return FourierSeries(0.0, {{m, 0.0, amp}});
  }
  static FourierSeries cosine(std::int64_t m = 1, double amp = 1.0) {
    return FourierSeries(0.0, {{m, amp, 0.0}});
  }

  double c0() const { return c0_; }
  const std::vector<FourierHarmonic>& harmonics() const { return harmonics_; }
  bool zero_mean() const { return c0_ == 0.0; }

  std::int64_t max_harmonic() const {
    return harmonics_.empty() ? 0 : harmonics_.back().m;
  }

  double coeff_l1() const {
    double s = 0.0;
    for (const auto& h : harmonics_) s += std::fabs(h.a) + std::fabs(h.b);
    return s;
  }

  double eval(double x) const { return as_poly().eval(x); }
  double eval_deriv(double x) const { return derivative().eval(x); }

  /// Termwise derivative: harmonic m maps (a,b) -> (2 pi m b, -2 pi m a).
  FourierSeries derivative() const {
    std::vector<FourierHarmonic> d;
    d.reserve(harmonics_.size());
    for (const auto& h : harmonics_) {
      const double w = kTwoPi * static_cast<double>(h.m);
      d.push_back({h.m, w * h.b, -w * h.a});
    }
    return FourierSeries(0.0, std::move(d));
  }

  TrigPoly as_poly() const {
    TrigPoly p;
    p.constant = c0_;
    p.harmonics.reserve(harmonics_.size());
    for (const auto& h : harmonics_) p.harmonics.push_back({h.m, h.a, h.b});
    return p;
  }

 private:
  void validate() const {
    std::int64_t prev = 0;
    for (const auto& h : harmonics_) {
      if (h.m <= prev) {
        throw std::invalid_argument(
            "FourierSeries: harmonic indices must be positive and strictly increasing");
      }
      if (!std::isfinite(h.a) || !std::isfinite(h.b)) {
        throw std::invalid_argument("FourierSeries: non-finite coefficient");
      }
      prev = h.m;
    }
    if (!std::isfinite(c0_)) throw std::invalid_argument("FourierSeries: non-finite c0");
  }

  double c0_ = 0.0;
  std::vector<FourierHarmonic> harmonics_;
};

}  // namespace slowdiff
