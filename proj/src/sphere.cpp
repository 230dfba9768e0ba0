#include "slowdiff/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "slowdiff/circle.hpp"
#include "slowdiff/numeric.hpp"
#include "slowdiff/weyl.hpp"

namespace slowdiff {

SpherePoint SpherePoint::chart(double lambda, double theta, double z) {
  if (!(std::fabs(z) < 1.0)) throw std::domain_error("SpherePoint: chart needs |z| < 1");
  SpherePoint p;
  p.branch = Branch::Chart;
  p.lambda = reduce01(lambda);
  p.theta = reduce01(theta);
  p.z = z;
  return p;
}

SpherePoint SpherePoint::pole(double lambda, int sign) {
  SpherePoint p;
  p.branch = Branch::Pole;
  p.lambda = reduce01(lambda);
  p.pole_sign = sign >= 0 ? 1 : -1;
  p.z = p.pole_sign;
  return p;
}

namespace {

void require_example(const MapConfig& cfg, const char* op) {
  if (cfg.variant != MapVariant::Example1 && cfg.variant != MapVariant::Example2) {
    throw std::invalid_argument(std::string(op) + ": requires an example variant");
  }
  if (cfg.dim() != 1) {
    throw std::invalid_argument(std::string(op) + ": S^1 x S^2 examples need d = 1");
  }
}

// A(z) W(|m|, base, alpha) with the inverse-iterate sign folded in.
double angle_increment(const MapConfig& cfg, std::int64_t m, double base, double z) {
  if (m == 0) return 0.0;
  const double a = cfg.A.value_radial(z);
  if (m > 0) return a * weyl_sum_closed(cfg.F, cfg.alpha, m, base);
  const double shifted = reduce01(base + frac_mul_exact(m, cfg.alpha.value()).frac);
  return -a * weyl_sum_closed(cfg.F, cfg.alpha, -m, shifted);
}

}  // namespace

SpherePoint example_apply(const MapConfig& cfg, std::int64_t m, const SpherePoint& p) {
  require_example(cfg, "example_apply");
  const double malpha = frac_mul_exact(m, cfg.alpha.value()).frac;

  if (p.is_pole()) {
    SpherePoint q = p;
    if (cfg.variant == MapVariant::Example1) q.lambda = reduce01(p.lambda + malpha);
    return q;  // example 2 fixes the pole circles pointwise
  }

  SpherePoint q = p;
  if (cfg.variant == MapVariant::Example1) {
    q.lambda = reduce01(p.lambda + malpha);
    q.theta = reduce01(p.theta + angle_increment(cfg, m, p.lambda, p.z));
  } else {
    q.theta = reduce01(p.theta + malpha);
    q.lambda = reduce01(p.lambda + angle_increment(cfg, m, p.theta, p.z));
  }
  return q;
}

double sphere_displacement(const SpherePoint& a, const SpherePoint& b) {
  if (a.branch != b.branch) return 1.0;
  if (a.is_pole()) {
    if (a.pole_sign != b.pole_sign) return 1.0;
    return circle_dist(a.lambda, b.lambda);
  }
  double d = std::max(circle_dist(a.lambda, b.lambda), circle_dist(a.theta, b.theta));
  return std::max(d, std::fabs(a.z - b.z));
}

FixedPointScan fixed_point_scan(const MapConfig& cfg, std::int64_t grid, double tol) {
  require_example(cfg, "fixed_point_scan");
  if (grid < 2) throw std::invalid_argument("fixed_point_scan: grid must be >= 2");

  FixedPointScan out;
  out.tolerance = tol;
  out.min_displacement = 2.0;

  auto visit = [&](const SpherePoint& p) {
    const SpherePoint q = example_apply(cfg, 1, p);
    const double disp = sphere_displacement(p, q);
    if (disp <= tol) out.fixed.push_back(p);
    if (disp < out.min_displacement) {
      out.min_displacement = disp;
      out.argmin = p;
    }
    ++out.points_scanned;
  };

  for (std::int64_t i = 0; i < grid; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(grid);
    visit(SpherePoint::pole(lambda, +1));
    visit(SpherePoint::pole(lambda, -1));
    for (std::int64_t j = 0; j < grid; ++j) {
      const double theta = static_cast<double>(j) / static_cast<double>(grid);
      for (std::int64_t k = 0; k < grid; ++k) {
        const double z = -1.0 + 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        visit(SpherePoint::chart(lambda, theta, z));
      }
    }
  }
  return out;
}

}  // namespace slowdiff
