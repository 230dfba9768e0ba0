#include "slowdiff/flux.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "slowdiff/circle.hpp"
#include "slowdiff/matrix.hpp"
#include "slowdiff/quadrature.hpp"

namespace slowdiff {

namespace {

constexpr double kLambda0 = 0.0;  // base point of the cycle; the pairing is independent of it

double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;
  return r;
}

// Pullback determinant of the swept chain (t, theta, z) -> f_t(lambda0, theta, z),
// columns assembled from the path's analytic partials.
using PathJacobian = std::function<Matrix(double t, double theta, double z)>;

struct SweptQuad {
  double value = 0.0;
  double est_error = 0.0;
};

// Integrates det * (1/2) over [0,t_end] x [0,1] x [-1,1] with panel doubling
// per axis until the value settles to tol.
SweptQuad swept_volume(const PathJacobian& jac, double t_end, double tol, int min_panels) {
  auto integral = [&](int panels) {
    auto over_z = [&](double t, double theta) {
      return integrate_panels([&](double z) { return jac(t, theta, z).det(); }, -1.0, 1.0,
                              2, 16);
    };
    auto over_theta = [&](double t) {
      return integrate_panels([&](double theta) { return over_z(t, theta); }, 0.0, 1.0,
                              panels, 16);
    };
    return 0.5 * integrate_panels(over_theta, 0.0, t_end, 1, 16);
  };
  int panels = std::max(1, min_panels);
  double prev = integral(panels);
  for (;;) {
    panels *= 2;
    const double cur = integral(panels);
    const double diff = std::fabs(cur - prev);
    if (diff <= tol || panels > (1 << 12)) return {cur, diff};
    prev = cur;
  }
}

}  // namespace

FluxReport generator_loop_flux(double t_end) {
  // gamma_t(lambda, theta, z) = (lambda + t, theta, z)
  PathJacobian jac = [](double, double, double) {
    Matrix j = Matrix::identity(3);
    j(0, 0) = 1.0;  // d lambda / d t; remaining columns are the cycle frame
    return j;
  };
  const SweptQuad q = swept_volume(jac, t_end, 1e-10, 1);

  FluxReport r;
  r.method = "quadrature";
  r.cycle = "{lambda0} x S^2";
  r.value = q.value;
  r.value_mod1 = mod1(q.value);
  r.abs_error_estimate = q.est_error;
  r.has_analytic = true;
  r.analytic_value = t_end;
  return r;
}

FluxReport flux_example1(const MapConfig& cfg, double time_scale) {
  if (cfg.variant != MapVariant::Example1) {
    throw std::invalid_argument("flux_example1: requires variant example1");
  }
  const double alpha = cfg.alpha.value();
  const double speed = time_scale * alpha;
  const double f_l0 = cfg.F.eval(kLambda0);

  // f_t(lambda0, theta, z) = (lambda0 + t s alpha, theta + t s A(z) F(lambda0), z)
  PathJacobian jac = [&](double t, double /*theta*/, double z) {
    Matrix j(3);
    const double a = cfg.A.value_radial(z);
    const double da = cfg.A.deriv_radial(z);
    j(0, 0) = speed;                          // d lambda / d t
    j(1, 0) = time_scale * a * f_l0;          // d theta / d t
    j(1, 1) = 1.0;                            // d theta / d theta
    j(1, 2) = t * time_scale * da * f_l0;     // d theta / d z
    j(2, 2) = 1.0;                            // d z / d z
    return j;
  };
  const SweptQuad q = swept_volume(jac, 1.0, 1e-10, 1);

  FluxReport r;
  r.method = "quadrature";
  r.cycle = "{lambda0} x S^2";
  r.value = q.value;
  r.value_mod1 = mod1(q.value);
  r.abs_error_estimate = q.est_error;
  r.has_analytic = true;
  r.analytic_value = mod1(time_scale * alpha);
  if (cfg.alpha.degenerate()) {
    r.flagged = true;
    r.flag = "alpha is rational (degenerate control)";
  }
  return r;
}

FluxReport flux_example2(const MapConfig& cfg) {
  if (cfg.variant != MapVariant::Example2) {
    throw std::invalid_argument("flux_example2: requires variant example2");
  }
  // int_{-1}^{1} int_0^1 A(z) F(theta) dtheta dz, resolved past the highest
  // harmonic before the doubling test is trusted.
  const int nyquist_panels =
      static_cast<int>(std::max<std::int64_t>(1, cfg.F.max_harmonic() / 8));
  auto theta_integral = [&](int panels) {
    return integrate_panels([&](double th) { return cfg.F.eval(th); }, 0.0, 1.0, panels, 64);
  };
  auto z_integral = [&](int panels) {
    return integrate_panels([&](double z) { return cfg.A.value_radial(z); }, -1.0, 1.0,
                            panels, 64);
  };

  int panels = nyquist_panels;
  double prev = theta_integral(panels) * z_integral(panels);
  double value = prev, err = 0.0;
  for (;;) {
    panels *= 2;
    value = theta_integral(panels) * z_integral(panels);
    err = std::fabs(value - prev);
    if (err <= 1e-10 || panels > (1 << 20)) break;
    prev = value;
  }

  FluxReport r;
  r.method = "quadrature";
  r.cycle = "{lambda0} x S^2";
  r.value = value;
  r.value_mod1 = mod1(value);
  r.abs_error_estimate = err;
  if (!cfg.F.zero_mean()) {
    r.flagged = true;
    r.flag = "F is not zero-mean; the vanishing-flux conclusion requires mean-zero F";
  } else {
    r.has_analytic = true;
    r.analytic_value = 0.0;
  }
  return r;
}

}  // namespace slowdiff
