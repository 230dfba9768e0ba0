#pragma once

// The two S^1 x S^2 examples. Chart coordinates away from the poles are
// (lambda, theta, z) with lambda, theta in [0,1) and z in (-1,1); the poles
// are a tagged branch carrying only lambda (theta is undefined there).
//
//   example 1: f(lambda, w) = (lambda + alpha, R_{A(z)F(lambda)}(w)), poles rotate in lambda
//   example 2: f(lambda, w) = (lambda + A(z)F(theta), R_alpha(w)),    poles are fixed

#include <cstdint>
#include <vector>

#include "slowdiff/diffeo.hpp"

namespace slowdiff {

struct SpherePoint {
  enum class Branch { Chart, Pole };
  Branch branch = Branch::Chart;
  double lambda = 0.0;
  double theta = 0.0;  // chart only
  double z = 0.0;      // chart: in (-1,1); pole: +-1
  int pole_sign = 1;   // pole only

  static SpherePoint chart(double lambda, double theta, double z);
  static SpherePoint pole(double lambda, int sign);
  bool is_pole() const { return branch == Branch::Pole; }
};

/// m-th iterate of the selected example map (m may be negative).
SpherePoint example_apply(const MapConfig& cfg, std::int64_t m, const SpherePoint& p);

/// Max over coordinates of the circle/euclidean displacement; 1 if the branch changed.
double sphere_displacement(const SpherePoint& a, const SpherePoint& b);

struct FixedPointScan {
  std::vector<SpherePoint> fixed;  // sampled points with displacement <= tolerance
  double min_displacement = 0.0;
  SpherePoint argmin;
  double tolerance = 0.0;
  std::int64_t points_scanned = 0;
};

/// Scans a product grid in (lambda, theta, z) plus both sampled pole circles.
FixedPointScan fixed_point_scan(const MapConfig& cfg, std::int64_t grid, double tol = 1e-10);

}  // namespace slowdiff
