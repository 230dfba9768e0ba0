#include <doctest.h>

#include <cmath>

#include "slowdiff/resonant.hpp"
#include "slowdiff/weyl.hpp"

using namespace slowdiff;

TEST_CASE("depth 1: single harmonic, quadratic-irrational alpha") {
  const ResonantPair p = resonant_pair(PsiSpec::power(0.5), 1);
  CHECK(p.F.harmonics().size() == 1);
  CHECK(p.F.zero_mean());
  CHECK(p.alpha.family() == RotationNumber::Family::CfConstant);
  REQUIRE(p.scales.size() == 2);
  CHECK(p.F.harmonics()[0].m == p.scales[0]);
}

TEST_CASE("harmonics sit on convergent denominators with bounded mass") {
  const ResonantPair p = resonant_pair(PsiSpec::power(0.5), 6, 3);
  REQUIRE(p.F.harmonics().size() == 6);
  const auto& conv = p.alpha.convergents();
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(p.F.harmonics()[j].m == p.scales[j]);
    CHECK(p.F.harmonics()[j].m == conv[j].q);  // the working alpha reproduces the design scales
    CHECK(p.F.harmonics()[j].a == 0.0);        // pure sine construction
    CHECK(p.F.harmonics()[j].b > 0.0);
    CHECK(p.F.harmonics()[j].b <= 1.0);
  }
  CHECK(p.F.coeff_l1() <= 1.0 + 1e-12);
}

TEST_CASE("depth guard") {
  CHECK_THROWS_AS(resonant_pair(PsiSpec::power(0.5), 0), std::invalid_argument);
  CHECK_THROWS_AS(resonant_pair(PsiSpec::power(0.5), 40), std::invalid_argument);
}

namespace {

// Production scan cross-checked by direct summation at the reported argmax.
double checked_max_wprime(const ResonantPair& p, std::int64_t n) {
  const WeylScanResult r = weyl_extrema(p.F, p.alpha, n);
  const double direct = std::fabs(weyl_deriv_direct(p.F, p.alpha, n, r.argmax_x));
  REQUIRE(std::fabs(direct - r.max_abs_Wprime) <=
          1e-9 * static_cast<double>(n) * kTwoPi * static_cast<double>(p.F.max_harmonic()));
  return r.max_abs_Wprime;
}

}  // namespace

TEST_CASE("power(0.5) depth 4: dyadic growth of max|W'| tracks the target") {
  // the construction has resonance scales up to q_{J+1}; past that everything
  // is saturated, so the tested range stops at the last scale
  const ResonantPair p = resonant_pair(PsiSpec::power(0.5), 4);
  double prev = 0.0;
  double band_lo = 1e300, band_hi = 0.0;
  for (std::int64_t n = 1; 2 * n <= p.scales.back(); n *= 2) {
    const double cur = checked_max_wprime(p, n);
    CHECK(cur >= prev * 0.98);  // non-decreasing over dyadic scales (tiny grid slack)
    prev = cur;
    const double cap = std::pow(static_cast<double>(n), 0.7);
    band_lo = std::min(band_lo, cur / cap);
    band_hi = std::max(band_hi, cur / cap);
  }
  // bounded by C n^0.7 over the tested range, with a loose band
  CHECK(band_hi / band_lo <= 1e3);
}

TEST_CASE("deep pair covers a wide dyadic range") {
  const ResonantPair p = resonant_pair(PsiSpec::power(0.5), 10);
  CHECK(p.scales.back() > 5000);
  double prev = 0.0;
  for (std::int64_t n = 1; 2 * n <= p.scales.back(); n *= 2) {
    const double cur = checked_max_wprime(p, n);
    CHECK(cur >= prev * 0.98);
    prev = cur;
  }
  // growth actually happened across the range
  CHECK(prev >= 2.0 * checked_max_wprime(p, 4));
}

TEST_CASE("log target, depth 3: same structure, wider band allowed") {
  const ResonantPair p = resonant_pair(PsiSpec::log(), 3);
  double prev = 0.0;
  for (std::int64_t n = 1; 2 * n <= p.scales.back(); n *= 2) {
    const double cur = checked_max_wprime(p, n);
    CHECK(cur >= prev * 0.9);
    prev = cur;
    CHECK(cur <= 1e2 * std::pow(static_cast<double>(n), 0.7));
  }
}
