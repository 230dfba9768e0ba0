#pragma once

// The chart skew product on U = T^2 x D:
//   f1(phi1, phi2, u) = (phi1 + alpha, phi2 + A(u) F(phi1), u)
// with closed-form iterates f1^m = (phi1 + m alpha, phi2 + A(u) W(m, phi1, alpha), u)
// and the explicit (d+2)x(d+2) Jacobian. Negative m uses the inverse form
// (phi1 + m alpha, phi2 - A(u) W(|m|, phi1 + m alpha, alpha), u).

#include <cstdint>
#include <vector>

#include "slowdiff/bump.hpp"
#include "slowdiff/fourier.hpp"
#include "slowdiff/matrix.hpp"
#include "slowdiff/rotation.hpp"

namespace slowdiff {

struct ChartPoint {
  double phi1 = 0.0;            // reduced to [0,1)
  double phi2 = 0.0;            // reduced to [0,1)
  std::vector<double> u = {0.0};  // |u| < 1
};

ChartPoint make_chart_point(double phi1, double phi2, std::vector<double> u);

enum class MapVariant { Chart, Example1, Example2 };

const char* variant_name(MapVariant v);

struct MapConfig {
  FourierSeries F = FourierSeries::sine();
  RotationNumber alpha = RotationNumber::quadratic("golden");
  BumpProfile A = BumpProfile(1, 0.3, 0.6);
  MapVariant variant = MapVariant::Chart;

  int dim() const { return A.dim(); }
};

ChartPoint f1_apply(const MapConfig& cfg, const ChartPoint& x);
ChartPoint f1_inverse(const MapConfig& cfg, const ChartPoint& x);

/// m may be negative; equals the |m|-fold composition of f1_apply / f1_inverse.
ChartPoint f1_iterate_closed(const MapConfig& cfg, std::int64_t m, const ChartPoint& x);

/// d_x f1^m in chart coordinates (identity except row 2).
Matrix jacobian_closed(const MapConfig& cfg, std::int64_t m, const ChartPoint& x);

/// Chain-rule oracle: ordered product of one-step Jacobians along the orbit.
/// Guarded to |m| <= 10^4; intended for tests.
Matrix jacobian_chain(const MapConfig& cfg, std::int64_t m, const ChartPoint& x);

double chart_distance(const ChartPoint& a, const ChartPoint& b);

}  // namespace slowdiff
