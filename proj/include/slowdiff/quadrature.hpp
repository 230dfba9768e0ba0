#pragma once

#include <functional>
#include <vector>

namespace slowdiff {

struct GaussRule {
  std::vector<double> nodes;    // on [-1,1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a,b] with `panels` equal panels of `n` nodes.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n = 64);

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  int panels = 0;
};

/// Doubles the panel count from `min_panels` until successive values differ by
/// at most `tol`; returns the last value and the final doubling difference.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol, int min_panels = 1, int n = 64,
                              int max_panels = 1 << 22);

}  // namespace slowdiff
