#include <doctest.h>

#include <cmath>

#include "slowdiff/bump.hpp"
#include "slowdiff/circle.hpp"
#include "slowdiff/fourier.hpp"
#include "slowdiff/numeric.hpp"
#include "slowdiff/quadrature.hpp"
#include "slowdiff/rng.hpp"

using namespace slowdiff;

TEST_CASE("circle_reduce basics") {
  CHECK(reduce01(0.0) == 0.0);
  CHECK(reduce01(1.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(reduce01(-0.1) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(reduce01(1.0) == 0.0);
  CHECK(reduce01(-1e-300) == 0.0);  // rounds to the seam, stays in [0,1)
  CHECK_THROWS_AS(circle_reduce(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(circle_reduce(INFINITY), std::invalid_argument);
}

TEST_CASE("circle_reduce is idempotent and 1-periodic") {
  PhiloxRng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.uniform01(i, 0) - 0.5) * 2e6;
    const double r = reduce01(x);
    CHECK(r >= 0.0);
    CHECK(r < 1.0);
    CHECK(reduce01(r) == r);
    const double tol = 4.0 * std::ldexp(1.0, -52) * std::max(1.0, std::fabs(x));
    CHECK(circle_dist(reduce01(x + 1.0), r) <= tol);
  }
}

TEST_CASE("circle distance") {
  CHECK(circle_dist(0.1, 0.9) == doctest::Approx(0.2));
  CHECK(circle_dist(0.0, 0.5) == doctest::Approx(0.5));
  CHECK(circle_dist(0.25, 0.25) == 0.0);
}

TEST_CASE("frac_mul_exact matches exact integer arithmetic at large k") {
  // a = M / 2^e exactly; frac(k a) = (k M mod 2^e) / 2^e in exact integers
  for (double a : {1.0 / 3.0, 0.6180339887498949, 0.7319}) {
    int e = 0;
    const double mant = std::frexp(a, &e);
    const int shift = 53 - e;
    const __int128 m = static_cast<__int128>(std::ldexp(mant, 53));
    const __int128 den = static_cast<__int128>(1) << shift;
    for (std::int64_t k : {1LL, 7LL, 1000003LL, 123456789012LL}) {
      const FracParity fp = frac_mul_exact(k, a);
      const __int128 rem = (static_cast<__int128>(k) * m) % den;
      const double want = static_cast<double>(static_cast<long double>(rem) /
                                              static_cast<long double>(den));
      CHECK(std::fabs(want - fp.frac) <= 1e-15);
      const __int128 quot = (static_cast<__int128>(k) * m) / den;
      CHECK(fp.odd == ((quot & 1) != 0));
    }
  }
}

TEST_CASE("sinpi/cospi folded evaluation") {
  for (double f : {0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.999}) {
    CHECK(sinpi_frac(f, false) == doctest::Approx(std::sin(kPi * f)).epsilon(1e-14));
    CHECK(cospi_frac(f, false) == doctest::Approx(std::cos(kPi * f)).epsilon(1e-14));
    CHECK(sinpi_frac(f, true) == doctest::Approx(-std::sin(kPi * f)).epsilon(1e-14));
    CHECK(cospi_frac(f, true) == doctest::Approx(-std::cos(kPi * f)).epsilon(1e-14));
  }
}

TEST_CASE("fourier evaluation examples") {
  const FourierSeries f = FourierSeries::sine();
  CHECK(f.eval(0.25) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.eval_deriv(0.0) == doctest::Approx(kTwoPi).epsilon(1e-15));

  const FourierSeries g(0.0, {{2, 0.3, 0.0}});  // 0.3 cos(4 pi x)
  CHECK(g.eval(0.125) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK(FourierSeries::sine().zero_mean());
  CHECK_FALSE(FourierSeries::constant(1.0).zero_mean());
}

TEST_CASE("fourier derivative coefficients") {
  const FourierSeries f(0.5, {{3, 0.25, -0.75}});
  const FourierSeries d = f.derivative();
  REQUIRE(d.harmonics().size() == 1);
  CHECK(d.c0() == 0.0);
  CHECK(d.harmonics()[0].a == doctest::Approx(kTwoPi * 3 * -0.75));
  CHECK(d.harmonics()[0].b == doctest::Approx(-kTwoPi * 3 * 0.25));
}

TEST_CASE("fourier derivative matches finite differences") {
  const FourierSeries f(0.1, {{1, 0.4, 0.7}, {3, -0.2, 0.1}, {8, 0.05, -0.3}});
  double scale = 1.0;
  for (const auto& h : f.harmonics()) {
    const double w = kTwoPi * static_cast<double>(h.m);
    scale += w * w * (std::fabs(h.a) + std::fabs(h.b));
  }
  PhiloxRng rng(11);
  const double h = 1e-6;
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform01(i, 0);
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
    CHECK(std::fabs(fd - f.eval_deriv(x)) <= 1e-4 * scale);
  }
}

TEST_CASE("fourier invariants rejected") {
  CHECK_THROWS(FourierSeries(0.0, {{2, 1.0, 0.0}, {2, 0.0, 1.0}}));  // duplicate m
  CHECK_THROWS(FourierSeries(0.0, {{3, 1.0, 0.0}, {2, 0.0, 1.0}}));  // not increasing
  CHECK_THROWS(FourierSeries(0.0, {{0, 1.0, 0.0}}));                 // m must be positive
}

TEST_CASE("bump plateau, support, and midpoint value") {
  const BumpProfile a(1, 0.3, 0.6);
  CHECK(a.eval(std::vector<double>{0.0}) == 1.0);
  CHECK(a.grad(std::vector<double>{0.0})[0] == 0.0);
  CHECK(a.eval(std::vector<double>{0.6}) == 0.0);
  CHECK(a.eval(std::vector<double>{0.75}) == 0.0);
  CHECK(a.grad(std::vector<double>{0.75})[0] == 0.0);
  // at the midpoint the transition variable is 1/2 and h(1/2) = 1/2 exactly
  const double mid = 0.45;
  const double val = a.value_radial(mid);
  CHECK(val > 0.0);
  CHECK(val < 1.0);
  CHECK(val == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(a.eval(std::vector<double>{1.0}), std::domain_error);
}

TEST_CASE("bump is radially symmetric under random rotations") {
  const BumpProfile a(2, 0.3, 0.6);
  PhiloxRng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.98 * rng.uniform01(i, 0);
    const double t0 = kTwoPi * rng.uniform01(i, 1);
    const double t1 = kTwoPi * rng.uniform01(i, 2);
    const double v0 = a.eval(std::vector<double>{r * std::cos(t0), r * std::sin(t0)});
    const double v1 = a.eval(std::vector<double>{r * std::cos(t1), r * std::sin(t1)});
    CHECK(std::fabs(v0 - v1) <= 1e-12);
  }
}

TEST_CASE("bump gradient matches finite differences away from the radii") {
  const BumpProfile a(1, 0.3, 0.6);
  PhiloxRng rng(17);
  const double h = 1e-7;
  for (int i = 0; i < 2000; ++i) {
    const double r = 0.98 * rng.uniform01(i, 0);
    if (std::fabs(r - 0.3) < 1e-3 || std::fabs(r - 0.6) < 1e-3) continue;
    const double g = a.grad(std::vector<double>{r})[0];
    const double fd = (a.value_radial(r + h) - a.value_radial(r - h)) / (2 * h);
    CHECK(std::fabs(fd - g) <= 1e-5 * std::max({1.0, std::fabs(fd), std::fabs(g)}));
  }
}

TEST_CASE("bump gradient in higher dimension points inward radially") {
  const BumpProfile a(3, 0.3, 0.6);
  const std::vector<double> u{0.25, 0.2, 0.15};
  const auto g = a.grad(u);
  double r = 0.0;
  for (double v : u) r += v * v;
  r = std::sqrt(r);
  const double dr = a.deriv_radial(r);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(g[i] == doctest::Approx(dr * u[i] / r).epsilon(1e-13));
  }
  CHECK(a.grad_l1(u) == doctest::Approx(std::fabs(dr) * (0.25 + 0.2 + 0.15) / r).epsilon(1e-13));
}

TEST_CASE("bump radii validated") {
  CHECK_THROWS(BumpProfile(1, 0.6, 0.3));
  CHECK_THROWS(BumpProfile(1, 0.0, 0.6));
  CHECK_THROWS(BumpProfile(1, 0.3, 1.0));
}

TEST_CASE("gauss-legendre integrates polynomials exactly and sines spectrally") {
  // degree-7 polynomial with a 4-node rule
  const GaussRule r4 = gauss_legendre(4);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double x = r4.nodes[i];
    acc += r4.weights[i] * (5 * x * x * x * x * x * x * x + x * x * x - 2 * x * x + 1);
  }
  CHECK(acc == doctest::Approx(2.0 * (1.0 - 2.0 / 3.0)).epsilon(1e-13));

  const double s = integrate_panels([](double x) { return std::sin(kTwoPi * x); }, 0.0, 1.0, 2);
  CHECK(std::fabs(s) < 1e-14);
  const QuadResult q = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  CHECK(q.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("philox is counter-based and stable") {
  PhiloxRng a(42), b(42), c(43);
  CHECK(a.bits(0, 0) == b.bits(0, 0));
  CHECK(a.bits(123456, 3) == b.bits(123456, 3));
  CHECK(a.bits(0, 0) != c.bits(0, 0));
  // open symmetric interval never touches the ends
  for (int i = 0; i < 1000; ++i) {
    const double v = a.uniform_open_sym(i, 2);
    CHECK(v > -1.0);
    CHECK(v < 1.0);
  }
}
