#pragma once

#include <cmath>
#include <stdexcept>

namespace slowdiff {

/// A coordinate on S^1 = R/Z, always stored reduced to [0,1).
class CircleValue {
 public:
  CircleValue() = default;
  double value() const { return v_; }

  friend CircleValue circle_reduce(double x);

 private:
  explicit CircleValue(double reduced) : v_(reduced) {}
  double v_ = 0.0;
};

inline CircleValue circle_reduce(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("circle_reduce: non-finite input");
  }
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // floor rounding can land exactly on 1
  return CircleValue(r);
}

inline double reduce01(double x) { return circle_reduce(x).value(); }

/// Shortest-arc distance between two reduced circle coordinates.
inline double circle_dist(double a, double b) {
  const double d = std::fabs(a - b);
  return d <= 0.5 ? d : 1.0 - d;
}

}  // namespace slowdiff
