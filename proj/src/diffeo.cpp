#include "slowdiff/diffeo.hpp"

#include <cmath>
#include <stdexcept>

#include "slowdiff/circle.hpp"
#include "slowdiff/numeric.hpp"
#include "slowdiff/weyl.hpp"

namespace slowdiff {

namespace {

void require_chart(const MapConfig& cfg, const char* op) {
  if (cfg.variant != MapVariant::Chart) {
    throw std::invalid_argument(std::string(op) + ": requires the chart variant");
  }
}

double disc_radius(const std::vector<double>& u) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::sqrt(s);
}

}  // namespace

ChartPoint make_chart_point(double phi1, double phi2, std::vector<double> u) {
  if (disc_radius(u) >= 1.0) {
    throw std::domain_error("ChartPoint: |u| must be < 1");
  }
  return {reduce01(phi1), reduce01(phi2), std::move(u)};
}

const char* variant_name(MapVariant v) {
  switch (v) {
    case MapVariant::Chart:
      return "chart";
    case MapVariant::Example1:
      return "example1";
    case MapVariant::Example2:
      return "example2";
  }
  return "?";
}

ChartPoint f1_apply(const MapConfig& cfg, const ChartPoint& x) {
  require_chart(cfg, "f1_apply");
  ChartPoint y = x;
  y.phi1 = reduce01(x.phi1 + cfg.alpha.value());
  y.phi2 = reduce01(x.phi2 + cfg.A.eval(x.u) * cfg.F.eval(x.phi1));
  return y;
}

ChartPoint f1_inverse(const MapConfig& cfg, const ChartPoint& x) {
  require_chart(cfg, "f1_inverse");
  ChartPoint y = x;
  y.phi1 = reduce01(x.phi1 - cfg.alpha.value());
  y.phi2 = reduce01(x.phi2 - cfg.A.eval(x.u) * cfg.F.eval(y.phi1));
  return y;
}

ChartPoint f1_iterate_closed(const MapConfig& cfg, std::int64_t m, const ChartPoint& x) {
  require_chart(cfg, "f1_iterate_closed");
  const double alpha = cfg.alpha.value();
  ChartPoint y = x;
  if (m >= 0) {
    y.phi1 = reduce01(x.phi1 + frac_mul_exact(m, alpha).frac);
    y.phi2 = reduce01(x.phi2 + cfg.A.eval(x.u) * weyl_sum_closed(cfg.F, cfg.alpha, m, x.phi1));
  } else {
    const double shifted = reduce01(x.phi1 + frac_mul_exact(m, alpha).frac);
    y.phi1 = shifted;
    y.phi2 = reduce01(x.phi2 - cfg.A.eval(x.u) * weyl_sum_closed(cfg.F, cfg.alpha, -m, shifted));
  }
  return y;
}

Matrix jacobian_closed(const MapConfig& cfg, std::int64_t m, const ChartPoint& x) {
  require_chart(cfg, "jacobian_closed");
  const int d = cfg.dim();
  Matrix J = Matrix::identity(static_cast<std::size_t>(d) + 2);
  const double a = cfg.A.eval(x.u);
  const std::vector<double> grad = cfg.A.grad(x.u);
  double w = 0.0, wp = 0.0, sign = 1.0;
  if (m >= 0) {
    w = weyl_sum_closed(cfg.F, cfg.alpha, m, x.phi1);
    wp = weyl_deriv_closed(cfg.F, cfg.alpha, m, x.phi1);
  } else {
    const double shifted = reduce01(x.phi1 + frac_mul_exact(m, cfg.alpha.value()).frac);
    w = weyl_sum_closed(cfg.F, cfg.alpha, -m, shifted);
    wp = weyl_deriv_closed(cfg.F, cfg.alpha, -m, shifted);
    sign = -1.0;
  }
  J(1, 0) = sign * a * wp;
  for (int i = 0; i < d; ++i) J(1, 2 + static_cast<std::size_t>(i)) = sign * grad[static_cast<std::size_t>(i)] * w;
  return J;
}

Matrix jacobian_chain(const MapConfig& cfg, std::int64_t m, const ChartPoint& x) {
  require_chart(cfg, "jacobian_chain");
  if (std::llabs(m) > 10000) {
    throw std::invalid_argument("jacobian_chain: |m| > 1e4 exceeds the cost guard");
  }
  const int d = cfg.dim();
  const std::size_t n = static_cast<std::size_t>(d) + 2;

  auto one_step = [&](const ChartPoint& p, bool inverse) {
    Matrix J = Matrix::identity(n);
    const double a = cfg.A.eval(p.u);
    const std::vector<double> grad = cfg.A.grad(p.u);
    const double at = inverse ? reduce01(p.phi1 - cfg.alpha.value()) : p.phi1;
    const double sign = inverse ? -1.0 : 1.0;
    J(1, 0) = sign * a * cfg.F.eval_deriv(at);
    for (int i = 0; i < d; ++i) J(1, 2 + static_cast<std::size_t>(i)) = sign * grad[static_cast<std::size_t>(i)] * cfg.F.eval(at);
    return J;
  };

  Matrix acc = Matrix::identity(n);
  ChartPoint p = x;
  const bool inverse = m < 0;
  for (std::int64_t k = 0; k < std::llabs(m); ++k) {
    acc = one_step(p, inverse) * acc;
    p = inverse ? f1_inverse(cfg, p) : f1_apply(cfg, p);
  }
  return acc;
}

double chart_distance(const ChartPoint& a, const ChartPoint& b) {
  double d = std::max(circle_dist(a.phi1, b.phi1), circle_dist(a.phi2, b.phi2));
  for (std::size_t i = 0; i < a.u.size(); ++i) d = std::max(d, std::fabs(a.u[i] - b.u[i]));
  return d;
}

}  // namespace slowdiff
