#include "slowdiff/volume.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slowdiff/circle.hpp"
#include "slowdiff/parallel.hpp"
#include "slowdiff/rng.hpp"
#include "slowdiff/sphere.hpp"

namespace slowdiff {

namespace {

inline int bin_of_unit(double v, int bins) {
  int b = static_cast<int>(v * bins);
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  return b;
}

inline int bin_of_sym(double v, int bins) { return bin_of_unit(0.5 * (v + 1.0), bins); }

}  // namespace

VolumeTestReport volume_pushforward_test(const MapConfig& cfg, std::int64_t m,
                                         std::int64_t n_samples, int bins_per_axis,
                                         std::uint64_t seed, double fixture_scale_phi2) {
  if (cfg.variant == MapVariant::Chart && cfg.dim() != 1) {
    throw std::invalid_argument(
        "volume_pushforward_test: chart variant supports d = 1 (uniform box sampling)");
  }
  if (n_samples < 1 || bins_per_axis < 2) {
    throw std::invalid_argument("volume_pushforward_test: bad sample/bin counts");
  }
  const std::int64_t total_bins =
      static_cast<std::int64_t>(bins_per_axis) * bins_per_axis * bins_per_axis;
  const double expected = static_cast<double>(n_samples) / static_cast<double>(total_bins);
  if (expected < 20.0) {
    throw std::invalid_argument(
        "volume_pushforward_test: expected count per bin below 20; raise samples or cut bins");
  }

  const PhiloxRng rng(seed);
  const bool chart = cfg.variant == MapVariant::Chart;
  const bool broken = fixture_scale_phi2 != 1.0;

  const std::int64_t nchunks = (n_samples + par::kChunk - 1) / par::kChunk;
  std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(nchunks));

  par::for_chunks(n_samples, [&](std::int64_t c, std::int64_t b, std::int64_t e) {
    std::vector<std::int64_t>& counts = partial[static_cast<std::size_t>(c)];
    counts.assign(static_cast<std::size_t>(total_bins), 0);
    for (std::int64_t i = b; i < e; ++i) {
      const std::uint64_t s = static_cast<std::uint64_t>(i);
      const double a0 = rng.uniform01(s, 0);
      const double a1 = rng.uniform01(s, 1);
      const double w = rng.uniform_open_sym(s, 2);
      int b0, b1, b2;
      if (chart) {
        ChartPoint p{a0, a1, {w}};
        ChartPoint q = f1_iterate_closed(cfg, m, p);
        double phi2 = q.phi2;
        if (broken) phi2 = reduce01(phi2 * fixture_scale_phi2);
        b0 = bin_of_unit(q.phi1, bins_per_axis);
        b1 = bin_of_unit(phi2, bins_per_axis);
        b2 = bin_of_sym(q.u[0], bins_per_axis);
      } else {
        SpherePoint q = example_apply(cfg, m, SpherePoint::chart(a0, a1, w));
        double theta = q.theta;
        if (broken) theta = reduce01(theta * fixture_scale_phi2);
        b0 = bin_of_unit(q.lambda, bins_per_axis);
        b1 = bin_of_unit(theta, bins_per_axis);
        b2 = bin_of_sym(q.z, bins_per_axis);
      }
      const std::int64_t idx =
          (static_cast<std::int64_t>(b0) * bins_per_axis + b1) * bins_per_axis + b2;
      ++counts[static_cast<std::size_t>(idx)];
    }
  });

  std::vector<std::int64_t> counts(static_cast<std::size_t>(total_bins), 0);
  for (const auto& part : partial) {
    if (part.empty()) continue;
    for (std::int64_t i = 0; i < total_bins; ++i) counts[static_cast<std::size_t>(i)] += part[static_cast<std::size_t>(i)];
  }

  const double p = 1.0 / static_cast<double>(total_bins);
  const double sigma = std::sqrt(static_cast<double>(n_samples) * p * (1.0 - p));
  double worst = 0.0;
  for (std::int64_t i = 0; i < total_bins; ++i) {
    worst = std::max(worst, std::fabs(static_cast<double>(counts[static_cast<std::size_t>(i)]) - expected) / sigma);
  }

  VolumeTestReport r;
  r.n_samples = n_samples;
  r.n_bins = total_bins;
  r.bins_per_axis = bins_per_axis;
  r.max_bin_deviation_sigma = worst;
  r.seed = seed;
  r.iterate_m = m;
  r.variant = variant_name(cfg.variant);
  r.broken_fixture = broken;
  return r;
}

}  // namespace slowdiff
