#include <doctest.h>

#include <cmath>

#include "slowdiff/circle.hpp"
#include "slowdiff/flux.hpp"
#include "slowdiff/quadrature.hpp"
#include "slowdiff/volume.hpp"

using namespace slowdiff;

namespace {

MapConfig example1_config(RotationNumber alpha = RotationNumber::quadratic("golden")) {
  MapConfig cfg;
  cfg.alpha = std::move(alpha);
  cfg.variant = MapVariant::Example1;
  return cfg;
}

MapConfig example2_config(FourierSeries f = FourierSeries::sine()) {
  MapConfig cfg;
  cfg.F = std::move(f);
  cfg.variant = MapVariant::Example2;
  return cfg;
}

}  // namespace

TEST_CASE("generator loop flux is 1; half loop is 1/2") {
  const FluxReport full = generator_loop_flux();
  CHECK(std::fabs(full.value - 1.0) <= 1e-8);
  CHECK(circle_dist(full.value_mod1, 0.0) <= 1e-8);
  const FluxReport half = generator_loop_flux(0.5);
  CHECK(std::fabs(half.value - 0.5) <= 1e-8);
}

TEST_CASE("example 1 flux equals alpha mod 1") {
  const FluxReport quarter = flux_example1(example1_config(RotationNumber::explicit_value(0.25)));
  CHECK(quarter.value_mod1 == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(quarter.flagged);  // rational alpha carries the degenerate flag

  const FluxReport golden = flux_example1(example1_config());
  CHECK(circle_dist(golden.value_mod1, 0.6180339887498949) <= 1e-6);
  CHECK_FALSE(golden.flagged);

  const FluxReport zero = flux_example1(example1_config(RotationNumber::explicit_value(0.0)));
  CHECK(zero.value_mod1 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("example 1 flux additivity: doubled path gives 2 alpha mod 1") {
  const MapConfig cfg = example1_config();
  const FluxReport twice = flux_example1(cfg, 2.0);
  CHECK(circle_dist(twice.value_mod1, reduce01(2.0 * cfg.alpha.value())) <= 1e-6);
}

TEST_CASE("example 2 flux vanishes for zero-mean F, independent of the bump") {
  for (double rp : {0.1, 0.3, 0.45}) {
    MapConfig cfg = example2_config(FourierSeries(0.0, {{1, 0.3, 0.7}, {5, -0.2, 0.4}}));
    cfg.A = BumpProfile(1, rp, rp + 0.3);
    const FluxReport r = flux_example2(cfg);
    CHECK(circle_dist(r.value_mod1, 0.0) <= 1e-8);
    CHECK_FALSE(r.flagged);
  }
}

TEST_CASE("example 2 flux flags non-zero-mean F and reports the integral") {
  const MapConfig cfg = example2_config(FourierSeries::constant(1.0));
  const FluxReport r = flux_example2(cfg);
  CHECK(r.flagged);
  // F = 1 separates: the value is the 1-D integral of A over (-1,1)
  const double a_mass = integrate_adaptive(
      [&](double z) { return cfg.A.value_radial(z); }, -1.0, 1.0, 1e-12).value;
  CHECK(r.value == doctest::Approx(a_mass).epsilon(1e-9));
  CHECK(r.value_mod1 > 0.1);
}

TEST_CASE("example 2 flux with a tiny bump support stays proportional to it") {
  MapConfig cfg = example2_config(FourierSeries::constant(1.0));
  cfg.A = BumpProfile(1, 0.01, 0.02);
  const FluxReport r = flux_example2(cfg);
  CHECK(r.value > 0.0);
  CHECK(r.value < 0.05);
}

TEST_CASE("flux rejects mismatched variants") {
  CHECK_THROWS_AS(flux_example1(example2_config()), std::invalid_argument);
  CHECK_THROWS_AS(flux_example2(example1_config()), std::invalid_argument);
}

TEST_CASE("volume test: rotations and skew products stay uniform") {
  MapConfig cfg;
  cfg.variant = MapVariant::Chart;
  cfg.F = FourierSeries::zero();
  const VolumeTestReport rot = volume_pushforward_test(cfg, 57, 200000, 10, 12345);
  CHECK(rot.max_bin_deviation_sigma <= 4.0);

  cfg.F = FourierSeries::sine();
  const VolumeTestReport skew = volume_pushforward_test(cfg, 100, 200000, 10, 12345);
  CHECK(skew.max_bin_deviation_sigma <= 4.0);
  CHECK(skew.n_bins == 1000);
}

TEST_CASE("volume test on the sphere examples") {
  for (MapVariant v : {MapVariant::Example1, MapVariant::Example2}) {
    MapConfig cfg;
    cfg.variant = v;
    const VolumeTestReport r = volume_pushforward_test(cfg, 40, 150000, 8, 999);
    CHECK(r.max_bin_deviation_sigma <= 4.0);
  }
}

TEST_CASE("broken-map fixture is detected far beyond 4 sigma") {
  MapConfig cfg;
  cfg.variant = MapVariant::Chart;
  const VolumeTestReport broken = volume_pushforward_test(cfg, 100, 200000, 10, 12345, 1.1);
  CHECK(broken.max_bin_deviation_sigma > 4.0);
  CHECK(broken.broken_fixture);
}

TEST_CASE("volume test is seed-deterministic") {
  MapConfig cfg;
  cfg.variant = MapVariant::Chart;
  const VolumeTestReport a = volume_pushforward_test(cfg, 21, 100000, 8, 777);
  const VolumeTestReport b = volume_pushforward_test(cfg, 21, 100000, 8, 777);
  const VolumeTestReport c = volume_pushforward_test(cfg, 21, 100000, 8, 778);
  CHECK(a.max_bin_deviation_sigma == b.max_bin_deviation_sigma);
  CHECK(a.max_bin_deviation_sigma != c.max_bin_deviation_sigma);
}

TEST_CASE("volume test rejects undersized designs") {
  MapConfig cfg;
  cfg.variant = MapVariant::Chart;
  CHECK_THROWS_AS(volume_pushforward_test(cfg, 10, 1000, 16, 1), std::invalid_argument);
}
