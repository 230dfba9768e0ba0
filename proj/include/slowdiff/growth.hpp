#pragma once

// Growth sequence Gamma_n = max(max_x ||d_x f^n||, max_x ||d_x f^-n||) in the
// max-row-sum norm. Only row 2 of the chart Jacobian differs from the
// identity, so
//
//   ||d_x f^{+-n}|| = 1 + A(u) |W'(n, phi, alpha)| + |grad A(u)|_1 |W(n, phi, alpha)|
//
// with phi shifted by -n alpha on the inverse side. W and W' depend only on
// phi, A and grad A only on u; the product-grid maximum is computed exactly by
// pairing the phi-grid value arrays with the Pareto frontier of the
// (A, |grad A|_1) table over the u grid - O(G_phi * |frontier| + G_u) per n
// instead of O(G_phi * G_u). A dense 2-D scan stays behind as a test oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "slowdiff/diffeo.hpp"
#include "slowdiff/psi.hpp"

namespace slowdiff {

struct GridSpec {
  std::int64_t phi_grid = 0;  // 0 = auto: max(4096, 64 * m_max)
  std::int64_t u_grid = 257;  // points per u axis
  std::int64_t sphere_grid = 64;
};

struct GammaPoint {
  std::int64_t n = 0;
  double gamma = 1.0;
  double forward_norm = 1.0;
  double inverse_norm = 1.0;
  ChartPoint argmax;
  bool argmax_from_inverse = false;
};

class GrowthScanner {
 public:
  GrowthScanner(MapConfig cfg, GridSpec grids = {});

  GammaPoint gamma(std::int64_t n) const;
  std::int64_t phi_grid() const { return phi_grid_; }
  std::int64_t frontier_size() const { return static_cast<std::int64_t>(edges_.size()); }
  const MapConfig& config() const { return cfg_; }

  /// max over the half-open n range [n_lo, n_hi]; used for bound scans.
  double gamma_max_over_range(std::int64_t n_lo, std::int64_t n_hi) const;

 private:
  struct Edge {
    double a = 0.0;  // A(u)
    double g = 0.0;  // |grad A(u)|_1
    std::vector<double> u;
  };
  struct SideMax {
    double rowsum_minus_1 = 0.0;
    std::int64_t phi_index = 0;
    std::size_t edge = 0;
  };
  SideMax side_max(const TrigPoly& w, const TrigPoly& wp) const;

  MapConfig cfg_;
  GridSpec grids_;
  std::int64_t phi_grid_ = 0;
  std::vector<Edge> edges_;
  mutable std::vector<double> buf_wp_, buf_w_;
};

/// (n, Gamma_n, argmax, Gamma_n / Psi(n)) over a schedule, with a tail-band verdict.
struct GrowthEntry {
  std::int64_t n = 0;
  double gamma = 1.0;
  double ratio = 0.0;
  ChartPoint argmax;
};

enum class GrowthVerdict { Bounded, SubPsi, Band, SuperPsi };
const char* verdict_name(GrowthVerdict v);

struct GrowthSeries {
  std::vector<GrowthEntry> entries;
  std::int64_t phi_grid = 0;
  std::int64_t u_grid = 0;
  std::string psi;
  double sup_ratio_tail = 0.0;
  double inf_ratio_tail = 0.0;
  GrowthVerdict verdict = GrowthVerdict::Bounded;
};

std::vector<std::int64_t> dyadic_schedule(std::int64_t max_n);

GrowthSeries gamma_series(const MapConfig& cfg, const std::vector<std::int64_t>& schedule,
                          const GridSpec& grids, const PsiSpec& psi);

}  // namespace slowdiff
