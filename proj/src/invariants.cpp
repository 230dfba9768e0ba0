#include "slowdiff/invariants.hpp"

#include <cmath>
#include <sstream>

#include "slowdiff/circle.hpp"
#include "slowdiff/flux.hpp"
#include "slowdiff/io.hpp"
#include "slowdiff/kernels/trig_scan.hpp"
#include "slowdiff/numeric.hpp"
#include "slowdiff/rng.hpp"
#include "slowdiff/sphere.hpp"
#include "slowdiff/volume.hpp"
#include "slowdiff/weyl.hpp"

namespace slowdiff {

namespace {

std::string qoi(double worst, double bound) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << "worst=" << worst << " bound=" << bound;
  return ss.str();
}

InvariantResult make(const std::string& name, double worst, double bound) {
  return {name, worst <= bound, qoi(worst, bound)};
}

struct Ctx {
  const RunConfig& cfg;
  PhiloxRng rng;
  MapConfig chart;      // chart-variant copy of the configured map
  MapConfig example1;
  MapConfig example2;

  explicit Ctx(const RunConfig& c) : cfg(c), rng(c.seed ^ 0x5157ULL) {
    chart = c.map;
    chart.variant = MapVariant::Chart;
    example1 = c.map;
    example1.variant = MapVariant::Example1;
    example2 = c.map;
    example2.variant = MapVariant::Example2;
    if (example2.F.c0() != 0.0) example2.F = FourierSeries::sine();
  }

  double u01(std::uint64_t i, std::uint32_t slot) { return rng.uniform01(i, slot); }
  ChartPoint random_point(std::uint64_t i) {
    std::vector<double> u(static_cast<std::size_t>(chart.dim()));
    for (std::size_t k = 0; k < u.size(); ++k) {
      u[k] = rng.uniform_open_sym(i, static_cast<std::uint32_t>(2 + k)) /
             std::sqrt(static_cast<double>(u.size()));
    }
    return make_chart_point(u01(i, 0), u01(i, 1), std::move(u));
  }
};

// --- numeric core ---------------------------------------------------------

InvariantResult check_circle(Ctx& c) {
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double x = (c.u01(static_cast<std::uint64_t>(i), 0) - 0.5) * 2e6;
    const double r = reduce01(x);
    worst = std::max(worst, std::fabs(reduce01(r) - r));  // idempotent, exact
    const double tol = 4.0 * std::ldexp(1.0, -52) * std::max(1.0, std::fabs(x));
    const double p = std::fabs(reduce01(x + 1.0) - r);
    worst = std::max(worst, std::max(0.0, std::min(p, 1.0 - p) - tol));
  }
  return make("circle_reduce idempotent and 1-periodic", worst, 0.0);
}

InvariantResult check_fourier_deriv(Ctx& c) {
  const FourierSeries& f = c.chart.F;
  double scale = 1.0;
  for (const auto& h : f.harmonics()) {
    const double w = kTwoPi * static_cast<double>(h.m);
    scale += w * w * (std::fabs(h.a) + std::fabs(h.b));
  }
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = c.u01(static_cast<std::uint64_t>(i), 1);
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - f.eval_deriv(x)));
  }
  return make("fourier_deriv matches central differences", worst, 1e-4 * scale);
}

InvariantResult check_bump_radial(Ctx& c) {
  // rotate 2-D points and compare; the profile itself is radial by build
  const BumpProfile a2(2, c.chart.A.r_plateau(), c.chart.A.r_support());
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double r = 0.98 * c.u01(static_cast<std::uint64_t>(i), 2);
    const double t0 = kTwoPi * c.u01(static_cast<std::uint64_t>(i), 3);
    const double t1 = kTwoPi * c.u01(static_cast<std::uint64_t>(i), 4);
    const std::vector<double> u{r * std::cos(t0), r * std::sin(t0)};
    const std::vector<double> v{r * std::cos(t1), r * std::sin(t1)};
    worst = std::max(worst, std::fabs(a2.eval(u) - a2.eval(v)));
  }
  return make("bump_eval radially symmetric", worst, 1e-12);
}

InvariantResult check_bump_grad(Ctx& c) {
  const BumpProfile& a = c.chart.A;
  const double h = 1e-7;
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double r = c.u01(static_cast<std::uint64_t>(i), 5) * 0.98;
    if (std::fabs(r - a.r_plateau()) < 1e-3 || std::fabs(r - a.r_support()) < 1e-3) continue;
    const std::vector<double> u{r};
    const double g = a.grad(u)[0];
    const double fd = (a.value_radial(r + h) - a.value_radial(r - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - g) / std::max({1.0, std::fabs(g), std::fabs(fd)}));
  }
  return make("bump_grad matches finite differences", worst, 1e-5);
}

InvariantResult check_convergents(Ctx& c) {
  const auto& conv = c.chart.alpha.convergents();
  const double alpha = c.chart.alpha.value();
  bool ok = !conv.empty();
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < conv.size(); ++k) {
    const double err = std::fabs(
        std::fma(static_cast<double>(conv[k].q), alpha, -static_cast<double>(conv[k].p)));
    const double err_next = std::fabs(std::fma(static_cast<double>(conv[k + 1].q), alpha,
                                               -static_cast<double>(conv[k + 1].p)));
    const double bound = 1.0 / static_cast<double>(conv[k + 1].q);
    // a terminating expansion attains the bound one step before its end
    if (err_next == 0.0 ? !(err <= bound * (1.0 + 1e-12)) : !(err < bound)) ok = false;
    worst = std::max(worst, err * static_cast<double>(conv[k + 1].q));
    if (conv[k + 1].q <= conv[k].q) ok = false;
  }
  return {"convergents satisfy |q alpha - p| < 1/q_next", ok, qoi(worst, 1.0)};
}

// --- weyl -----------------------------------------------------------------

InvariantResult check_cocycle(Ctx& c, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i);
    const std::int64_t n = 1 + static_cast<std::int64_t>(c.u01(id, 6) * 999);
    const std::int64_t m = 1 + static_cast<std::int64_t>(c.u01(id, 7) * 999);
    const double x = c.u01(id, 8);
    const double lhs = weyl_sum_direct(c.chart.F, c.chart.alpha, n + m, x);
    const double rhs =
        weyl_sum_direct(c.chart.F, c.chart.alpha, n, x) +
        weyl_sum_direct(c.chart.F, c.chart.alpha, m,
                        reduce01(x + frac_mul_exact(n, c.chart.alpha.value()).frac));
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return make("weyl cocycle identity", worst, 1e-8);
}

InvariantResult check_oracle_equivalence(Ctx& c, int cases, std::int64_t n_max) {
  const double l1 = c.chart.F.coeff_l1() + std::fabs(c.chart.F.c0());
  double worst_ratio = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 4096;
    const std::int64_t n = 1 + static_cast<std::int64_t>(c.u01(id, 0) * static_cast<double>(n_max - 1));
    const double x = c.u01(id, 1);
    const double a = weyl_sum_direct(c.chart.F, c.chart.alpha, n, x);
    const double b = weyl_sum_closed(c.chart.F, c.chart.alpha, n, x);
    const double tol = 1e-9 * static_cast<double>(n) * std::max(l1, 1e-300);
    worst_ratio = std::max(worst_ratio, std::fabs(a - b) / tol);
  }
  return make("weyl closed form matches direct summation", worst_ratio, 1.0);
}

InvariantResult check_weyl_scan_properties(Ctx& c) {
  // zero-mean transfer, zero existence, and the derivative bound on one scan set
  FourierSeries f = c.chart.F;
  if (!f.zero_mean()) f = FourierSeries::sine();
  bool ok = true;
  double worst = 0.0;
  for (std::int64_t n : {1LL, 37LL, 256LL, 1000LL}) {
    const WeylScanResult r = weyl_extrema(f, c.chart.alpha, n);
    if (!(std::fabs(r.mean_W) <= 1e-8 * static_cast<double>(n))) ok = false;
    if (!(r.min_W <= 0.0 && r.max_W >= 0.0)) ok = false;  // a zero of W exists
    const double slack = kTwoPi * static_cast<double>(f.max_harmonic()) *
                         static_cast<double>(n) / static_cast<double>(r.grid_size);
    const double excess = r.max_abs_W - (r.max_abs_Wprime + slack);
    worst = std::max(worst, excess);
    if (excess > 0.0) ok = false;
  }
  return {"weyl scans: zero mean, zero existence, max|W| <= max|W'|", ok, qoi(worst, 0.0)};
}

// --- diffeo ----------------------------------------------------------------

InvariantResult check_inverse_roundtrip(Ctx& c, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const ChartPoint x = c.random_point(static_cast<std::uint64_t>(i) + 8192);
    worst = std::max(worst, chart_distance(x, f1_inverse(c.chart, f1_apply(c.chart, x))));
    worst = std::max(worst, chart_distance(x, f1_apply(c.chart, f1_inverse(c.chart, x))));
  }
  return make("f1_apply / f1_inverse round trip", worst, 1e-12);
}

InvariantResult check_group_law(Ctx& c, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 16384;
    const std::int64_t m = static_cast<std::int64_t>(c.u01(id, 0) * 1000) - 500;
    const std::int64_t k = static_cast<std::int64_t>(c.u01(id, 1) * 1000) - 500;
    const ChartPoint x = c.random_point(id);
    const ChartPoint a = f1_iterate_closed(c.chart, m + k, x);
    const ChartPoint b = f1_iterate_closed(c.chart, m, f1_iterate_closed(c.chart, k, x));
    worst = std::max(worst, chart_distance(a, b));
  }
  return make("iterate group law", worst, 1e-8);
}

InvariantResult check_determinant(Ctx& c, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 32768;
    const std::int64_t m = static_cast<std::int64_t>(c.u01(id, 0) * 2000) - 1000;
    const ChartPoint x = c.random_point(id);
    worst = std::max(worst, std::fabs(jacobian_closed(c.chart, m, x).det() - 1.0));
  }
  return make("det d_x f1^m = 1", worst, 1e-10);
}

InvariantResult check_chain_rule(Ctx& c, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 65536;
    const std::int64_t m = static_cast<std::int64_t>(c.u01(id, 0) * 100) - 50;
    const ChartPoint x = c.random_point(id);
    const Matrix closed = jacobian_closed(c.chart, m, x);
    const Matrix chain = jacobian_chain(c.chart, m, x);
    double scale = 1.0;
    for (std::size_t r = 0; r < closed.size(); ++r) {
      for (std::size_t s = 0; s < closed.size(); ++s) {
        scale = std::max(scale, std::fabs(closed(r, s)));
      }
    }
    worst = std::max(worst, max_abs_diff(closed, chain) / scale);
  }
  return make("jacobian chain product matches closed form", worst, 1e-7);
}

InvariantResult check_example_chart_consistency(Ctx& c, int cases) {
  if (c.chart.dim() != 1) return {"example 1 matches chart skew product", true, "skipped (d > 1)"};
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 131072;
    const std::int64_t m = static_cast<std::int64_t>(c.u01(id, 0) * 400) - 200;
    const ChartPoint x = c.random_point(id);
    const ChartPoint via_chart = f1_iterate_closed(c.chart, m, x);
    const SpherePoint via_sphere =
        example_apply(c.example1, m, SpherePoint::chart(x.phi1, x.phi2, x.u[0]));
    worst = std::max(worst, circle_dist(via_chart.phi1, via_sphere.lambda));
    worst = std::max(worst, circle_dist(via_chart.phi2, via_sphere.theta));
    worst = std::max(worst, std::fabs(via_chart.u[0] - via_sphere.z));
  }
  return make("example 1 matches chart skew product", worst, 1e-10);
}

InvariantResult check_pole_locality(Ctx& c) {
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 262144;
    const double lambda = c.u01(id, 0);
    const double theta = c.u01(id, 1);
    const double z = c.chart.A.r_support() +
                     (1.0 - c.chart.A.r_support() - 1e-6) * c.u01(id, 2);
    const std::int64_t m = 1 + static_cast<std::int64_t>(c.u01(id, 3) * 50);
    for (const MapConfig* cfg : {&c.example1, &c.example2}) {
      const SpherePoint q = example_apply(*cfg, m, SpherePoint::chart(lambda, theta, z));
      const SpherePoint pole_moved = example_apply(*cfg, m, SpherePoint::pole(lambda, 1));
      // outside the support the chart point must follow the rotation branch bitwise
      if (cfg->variant == MapVariant::Example1) {
        if (q.lambda != pole_moved.lambda || q.theta != theta || q.z != z) ok = false;
      } else {
        const double want_theta = reduce01(theta + frac_mul_exact(m, cfg->alpha.value()).frac);
        if (q.lambda != lambda || q.theta != want_theta || q.z != z) ok = false;
      }
    }
  }
  return {"pure rotation outside the bump support (bitwise)", ok, ok ? "exact" : "mismatch"};
}

// --- growth -----------------------------------------------------------------

InvariantResult check_gamma_basics(Ctx& c) {
  MapConfig zero = c.chart;
  zero.F = FourierSeries::zero();
  GrowthScanner zs(zero, c.cfg.grids);
  bool ok = true;
  for (std::int64_t n : {1LL, 7LL, 64LL}) {
    if (zs.gamma(n).gamma != 1.0) ok = false;  // rotations have Gamma exactly 1
  }
  GrowthScanner gs(c.chart, c.cfg.grids);
  double worst = 0.0;
  for (std::int64_t n : {1LL, 2LL, 16LL, 319LL}) {
    const GammaPoint g = gs.gamma(n);
    if (!(g.gamma >= 1.0)) ok = false;
    // symmetry: the definition takes the max over both signs
    const double swapped = std::max(g.inverse_norm, g.forward_norm);
    worst = std::max(worst, std::fabs(swapped - g.gamma));
    if (swapped != g.gamma) ok = false;
  }
  return {"Gamma_n >= 1, rotation Gamma = 1, f <-> f^-1 symmetry", ok, qoi(worst, 0.0)};
}

InvariantResult check_gamma_submultiplicative(Ctx& c) {
  GrowthScanner gs(c.chart, c.cfg.grids);
  double worst = 0.0;
  for (std::int64_t n : {1LL, 2LL, 4LL, 8LL, 16LL, 32LL}) {
    for (std::int64_t m : {1LL, 4LL, 32LL}) {
      const double lhs = gs.gamma(n + m).gamma;
      const double rhs = gs.gamma(n).gamma * gs.gamma(m).gamma * 1.01;
      worst = std::max(worst, lhs - rhs);
    }
  }
  return make("Gamma submultiplicative within grid slack", worst, 0.0);
}

InvariantResult check_gamma_localization(Ctx& c) {
  bool ok = true;
  for (int i = 0; i < 40; ++i) {
    const auto id = static_cast<std::uint64_t>(i) + 524288;
    std::vector<double> u(static_cast<std::size_t>(c.chart.dim()), 0.0);
    u[0] = c.chart.A.r_support() + (1.0 - c.chart.A.r_support() - 1e-9) * c.u01(id, 0);
    const ChartPoint x = make_chart_point(c.u01(id, 1), c.u01(id, 2), u);
    const std::int64_t m = 1 + static_cast<std::int64_t>(c.u01(id, 3) * 200);
    if (matrix_norm_maxrow(jacobian_closed(c.chart, m, x)) != 1.0) ok = false;
  }
  return {"Gamma contribution is exactly 1 outside the support", ok, ok ? "exact" : "mismatch"};
}

InvariantResult check_gamma_separable_consistency(Ctx& c) {
  // forward norm from the kernel/frontier path vs a dense 2-D row-sum scan
  GridSpec grids = c.cfg.grids;
  grids.u_grid = std::min<std::int64_t>(grids.u_grid, 33);
  MapConfig small = c.chart;
  if (small.F.max_harmonic() > 64) small.F = FourierSeries::sine();
  GrowthScanner gs(small, grids);
  const std::int64_t G = gs.phi_grid();
  double worst = 0.0;
  for (std::int64_t n : {1LL, 13LL, 128LL}) {
    const GammaPoint g = gs.gamma(n);
    const TrigPoly w = weyl_poly(small.F, small.alpha, n);
    const TrigPoly wp = weyl_deriv_poly(small.F, small.alpha, n);
    double dense = 0.0;
    for (std::int64_t j = 0; j < G; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(G);
      const double pw = std::fabs(wp.eval(x));
      const double qw = std::fabs(w.eval(x));
      for (std::int64_t k = 0; k < grids.u_grid; ++k) {
        std::vector<double> u(static_cast<std::size_t>(small.dim()), 0.0);
        u[0] = -1.0 + 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(grids.u_grid);
        dense = std::max(dense, small.A.eval(u) * pw + small.A.grad_l1(u) * qw);
      }
    }
    worst = std::max(worst, std::fabs((1.0 + dense) - g.forward_norm));
  }
  return make("gamma equals the dense row-sum maximum", worst, 1e-10);
}

// --- geometry ----------------------------------------------------------------

InvariantResult check_flux(Ctx& c) {
  bool ok = true;
  double worst = 0.0;

  const FluxReport loop = generator_loop_flux();
  worst = std::max(worst, std::fabs(loop.value - 1.0));
  const FluxReport half = generator_loop_flux(0.5);
  worst = std::max(worst, std::fabs(half.value - 0.5));
  if (worst > 1e-8) ok = false;

  const FluxReport e1 = flux_example1(c.example1);
  const double d1 = circle_dist(e1.value_mod1, c.example1.alpha.value());
  worst = std::max(worst, d1);
  if (d1 > 1e-6) ok = false;

  const FluxReport e1x2 = flux_example1(c.example1, 2.0);
  const double d2 = circle_dist(e1x2.value_mod1, reduce01(2.0 * c.example1.alpha.value()));
  worst = std::max(worst, d2);
  if (d2 > 1e-6) ok = false;

  const FluxReport e2 = flux_example2(c.example2);
  const double d3 = std::min(e2.value_mod1, 1.0 - e2.value_mod1);
  worst = std::max(worst, d3);
  if (d3 > 1e-8) ok = false;

  MapConfig other_bump = c.example2;
  other_bump.A = BumpProfile(1, 0.1, 0.9);
  const FluxReport e2b = flux_example2(other_bump);
  const double d4 = std::min(e2b.value_mod1, 1.0 - e2b.value_mod1);
  worst = std::max(worst, d4);
  if (d4 > 1e-8) ok = false;

  return {"flux: loop 1, example1 alpha, example2 zero, additivity", ok, qoi(worst, 1e-6)};
}

InvariantResult check_fixed_points(Ctx& c) {
  const FixedPointScan s2 = fixed_point_scan(c.example2, 16);
  const FixedPointScan s1 = fixed_point_scan(c.example1, 16);
  bool ok = true;
  // example 2: every sampled pole point fixed; example 1: nothing fixed
  std::int64_t poles = 0;
  for (const auto& p : s2.fixed) poles += p.is_pole() ? 1 : 0;
  if (poles != 2 * 16) ok = false;
  if (!s1.fixed.empty()) ok = false;
  const double want = circle_dist(c.example1.alpha.value(), 0.0);
  if (s1.min_displacement < want - 1e-10) ok = false;
  return {"fixed points: example2 poles fixed, example1 none", ok,
          "min displacement ex1 = " + fmt_g17(s1.min_displacement)};
}

InvariantResult check_volume(Ctx& c) {
  const std::int64_t samples = 200000;
  const VolumeTestReport a =
      volume_pushforward_test(c.chart, 20, samples, 10, c.cfg.seed);
  const VolumeTestReport b =
      volume_pushforward_test(c.chart, 20, samples, 10, c.cfg.seed);
  const VolumeTestReport broken =
      volume_pushforward_test(c.chart, 20, samples, 10, c.cfg.seed, 1.1);
  bool ok = true;
  if (a.max_bin_deviation_sigma != b.max_bin_deviation_sigma) ok = false;  // seed-deterministic
  if (!(a.max_bin_deviation_sigma <= 4.0)) ok = false;
  if (!(broken.max_bin_deviation_sigma > 4.0)) ok = false;
  std::ostringstream ss;
  ss.precision(3);
  ss << "real=" << a.max_bin_deviation_sigma << " sigma, broken=" << broken.max_bin_deviation_sigma
     << " sigma";
  return {"volume Monte-Carlo: real <= 4 sigma, broken fixture flagged", ok, ss.str()};
}

InvariantResult check_kernel_equivalence(Ctx& c) {
  // production backend vs the std::sin/std::cos oracle on the configured map
  const TrigPoly poly = weyl_poly(c.chart.F, c.chart.alpha, 173);
  const std::int64_t grid = 4096;
  std::vector<double> prod(static_cast<std::size_t>(grid)), ref(static_cast<std::size_t>(grid));
  kernels::scan_fill(poly, grid, prod.data());
  kernels::scan_fill_reference(poly, grid, ref.data());
  double worst = 0.0;
  for (std::int64_t j = 0; j < grid; ++j) {
    worst = std::max(worst, std::fabs(prod[static_cast<std::size_t>(j)] - ref[static_cast<std::size_t>(j)]));
  }
  const double tol = 1e-11 * (1.0 + poly.coeff_l1() + std::fabs(poly.constant));
  InvariantResult r = make("scan kernel matches the sincos oracle", worst, tol);
  r.name += std::string(" [") + kernels::backend_name() + "]";
  return r;
}

}  // namespace

std::vector<InvariantResult> run_all_invariants(const RunConfig& cfg) {
  Ctx c(cfg);
  std::vector<InvariantResult> out;
  out.push_back(check_circle(c));
  out.push_back(check_fourier_deriv(c));
  out.push_back(check_bump_radial(c));
  out.push_back(check_bump_grad(c));
  out.push_back(check_convergents(c));
  out.push_back(check_cocycle(c, 200));
  out.push_back(check_oracle_equivalence(c, 200, 4000));
  out.push_back(check_weyl_scan_properties(c));
  out.push_back(check_kernel_equivalence(c));
  out.push_back(check_inverse_roundtrip(c, 300));
  out.push_back(check_group_law(c, 60));
  out.push_back(check_determinant(c, 100));
  out.push_back(check_chain_rule(c, 60));
  out.push_back(check_example_chart_consistency(c, 60));
  out.push_back(check_pole_locality(c));
  out.push_back(check_gamma_basics(c));
  out.push_back(check_gamma_submultiplicative(c));
  out.push_back(check_gamma_localization(c));
  out.push_back(check_gamma_separable_consistency(c));
  out.push_back(check_flux(c));
  out.push_back(check_fixed_points(c));
  out.push_back(check_volume(c));
  return out;
}

}  // namespace slowdiff
