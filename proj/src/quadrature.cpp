#include "slowdiff/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "slowdiff/numeric.hpp"

namespace slowdiff {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

namespace {
const GaussRule& cached_rule(int n) {
  static const GaussRule rule64 = gauss_legendre(64);
  if (n == 64) return rule64;
  thread_local GaussRule cached;
  thread_local int cached_n = -1;
  if (cached_n != n) {
    cached = gauss_legendre(n);
    cached_n = n;
  }
  return cached;
}
}  // namespace

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n) {
  const GaussRule& rule = cached_rule(n);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol, int min_panels, int n, int max_panels) {
  int panels = std::max(1, min_panels);
  double prev = integrate_panels(f, a, b, panels, n);
  for (;;) {
    if (panels > max_panels / 2) return {prev, tol, panels};  // give up refining
    panels *= 2;
    const double cur = integrate_panels(f, a, b, panels, n);
    const double diff = std::fabs(cur - prev);
    if (diff <= tol) return {cur, diff, panels};
    prev = cur;
  }
}

}  // namespace slowdiff
