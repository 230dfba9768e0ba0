#pragma once

// Monte-Carlo verification that the m-th iterate preserves the chart volume
// form: uniform samples are pushed forward and binned on a product grid; the
// worst bin deviation is reported in binomial standard deviations. Sampling is
// counter-based (Philox keyed by sample index), so reports are identical for
// any thread count.

#include <cstdint>
#include <string>

#include "slowdiff/diffeo.hpp"

namespace slowdiff {

struct VolumeTestReport {
  std::int64_t n_samples = 0;
  std::int64_t n_bins = 0;  // total bins
  int bins_per_axis = 0;
  double max_bin_deviation_sigma = 0.0;
  std::uint64_t seed = 0;
  std::int64_t iterate_m = 0;
  std::string variant;
  bool broken_fixture = false;
};

/// fixture_scale_phi2 != 1 is a test fixture: the second angle of every image
/// point is multiplied by the scale (mod 1), breaking volume preservation with
/// Jacobian determinant equal to the scale.
VolumeTestReport volume_pushforward_test(const MapConfig& cfg, std::int64_t m,
                                         std::int64_t n_samples, int bins_per_axis,
                                         std::uint64_t seed,
                                         double fixture_scale_phi2 = 1.0);

}  // namespace slowdiff
