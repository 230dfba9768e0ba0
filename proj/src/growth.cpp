#include "slowdiff/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "slowdiff/kernels/trig_scan.hpp"
#include "slowdiff/weyl.hpp"

namespace slowdiff {

namespace {

// Cell-centered product grid over (-1,1)^d, restricted to the open disc.
void build_u_points(int d, std::int64_t per_axis, std::vector<double>& point,
                    std::vector<std::vector<double>>& out) {
  if (static_cast<int>(point.size()) == d) {
    double r2 = 0.0;
    for (double v : point) r2 += v * v;
    if (r2 < 1.0) out.push_back(point);
    return;
  }
  for (std::int64_t k = 0; k < per_axis; ++k) {
    point.push_back(-1.0 + 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(per_axis));
    build_u_points(d, per_axis, point, out);
    point.pop_back();
  }
}

}  // namespace

GrowthScanner::GrowthScanner(MapConfig cfg, GridSpec grids)
    : cfg_(std::move(cfg)), grids_(grids) {
  const std::int64_t rule = weyl_grid_rule(cfg_.F.max_harmonic());
  phi_grid_ = grids_.phi_grid == 0 ? rule : grids_.phi_grid;
  if (phi_grid_ < rule) {
    throw std::invalid_argument("GrowthScanner: phi grid coarser than the scan rule");
  }
  if (grids_.u_grid < 2) throw std::invalid_argument("GrowthScanner: u grid too small");

  std::vector<std::vector<double>> upoints;
  std::vector<double> scratch;
  build_u_points(cfg_.dim(), grids_.u_grid, scratch, upoints);

  // Pareto frontier of (A, |grad A|_1): any row-sum max over the u grid is
  // attained on it, since the row sum is monotone in both coordinates.
  struct Tagged {
    double a, g;
    std::size_t idx;
  };
  std::vector<Tagged> pts;
  pts.reserve(upoints.size());
  for (std::size_t i = 0; i < upoints.size(); ++i) {
    pts.push_back({cfg_.A.eval(upoints[i]), cfg_.A.grad_l1(upoints[i]), i});
  }
  std::sort(pts.begin(), pts.end(), [](const Tagged& x, const Tagged& y) {
    if (x.a != y.a) return x.a > y.a;
    if (x.g != y.g) return x.g > y.g;
    return x.idx < y.idx;
  });
  std::vector<Edge> frontier;
  double best_g = -1.0;
  for (const auto& p : pts) {
    if (p.g > best_g) {
      best_g = p.g;
      frontier.push_back({p.a, p.g, upoints[p.idx]});
    }
  }

  // A nonnegative functional a*P + g*Q over the frontier is maximized at a
  // vertex of its convex hull; drop the interior of the staircase.
  // traversal order: a strictly decreasing, g strictly increasing
  for (const Edge& e : frontier) {
    while (edges_.size() >= 2) {
      const Edge& u = edges_[edges_.size() - 2];
      const Edge& v = edges_.back();
      const double cross = (v.a - u.a) * (e.g - u.g) - (v.g - u.g) * (e.a - u.a);
      if (cross <= 0.0) {
        edges_.pop_back();  // v lies on or below the chord u -> e
      } else {
        break;
      }
    }
    edges_.push_back(e);
  }
}

GrowthScanner::SideMax GrowthScanner::side_max(const TrigPoly& w, const TrigPoly& wp) const {
  buf_wp_.resize(static_cast<std::size_t>(phi_grid_));
  buf_w_.resize(static_cast<std::size_t>(phi_grid_));
  kernels::scan_fill(wp, phi_grid_, buf_wp_.data());
  kernels::scan_fill(w, phi_grid_, buf_w_.data());
  kernels::abs_inplace(buf_wp_.data(), phi_grid_);
  kernels::abs_inplace(buf_w_.data(), phi_grid_);

  SideMax best;
  best.rowsum_minus_1 = -1.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const kernels::PairMax pm = kernels::weighted_pair_max(
        buf_wp_.data(), buf_w_.data(), phi_grid_, edges_[e].a, edges_[e].g);
    if (pm.value > best.rowsum_minus_1) {
      best.rowsum_minus_1 = pm.value;
      best.phi_index = pm.argmax;
      best.edge = e;
    }
  }
  if (best.rowsum_minus_1 < 0.0) best.rowsum_minus_1 = 0.0;  // empty frontier
  return best;
}

GammaPoint GrowthScanner::gamma(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("gamma: n must be >= 1");

  const TrigPoly w = weyl_poly(cfg_.F, cfg_.alpha, n);
  const TrigPoly wp = weyl_deriv_poly(cfg_.F, cfg_.alpha, n);
  const SideMax fwd = side_max(w, wp);

  // d_x f^-n evaluates W, W' at phi - n alpha: fold the shift into the
  // coefficients and scan the same grid.
  const SideMax inv = side_max(w.shifted(-n, cfg_.alpha.value()),
                               wp.shifted(-n, cfg_.alpha.value()));

  GammaPoint out;
  out.n = n;
  out.forward_norm = 1.0 + fwd.rowsum_minus_1;
  out.inverse_norm = 1.0 + inv.rowsum_minus_1;
  const SideMax& winner = fwd.rowsum_minus_1 >= inv.rowsum_minus_1 ? fwd : inv;
  out.argmax_from_inverse = inv.rowsum_minus_1 > fwd.rowsum_minus_1;
  out.gamma = 1.0 + winner.rowsum_minus_1;
  out.argmax.phi1 = static_cast<double>(winner.phi_index) / static_cast<double>(phi_grid_);
  out.argmax.phi2 = 0.0;
  out.argmax.u = edges_.empty() ? std::vector<double>(static_cast<std::size_t>(cfg_.dim()), 0.0)
                                : edges_[winner.edge].u;
  return out;
}

double GrowthScanner::gamma_max_over_range(std::int64_t n_lo, std::int64_t n_hi) const {
  double best = 1.0;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) best = std::max(best, gamma(n).gamma);
  return best;
}

const char* verdict_name(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Bounded:
      return "bounded";
    case GrowthVerdict::SubPsi:
      return "sub-psi";
    case GrowthVerdict::Band:
      return "band";
    case GrowthVerdict::SuperPsi:
      return "super-psi";
  }
  return "?";
}

std::vector<std::int64_t> dyadic_schedule(std::int64_t max_n) {
  if (max_n < 1) throw std::invalid_argument("dyadic_schedule: max_n must be >= 1");
  std::vector<std::int64_t> s;
  for (std::int64_t n = 1; n <= max_n; n *= 2) {
    s.push_back(n);
    if (n > max_n / 2) break;
  }
  return s;
}

GrowthSeries gamma_series(const MapConfig& cfg, const std::vector<std::int64_t>& schedule,
                          const GridSpec& grids, const PsiSpec& psi) {
  if (schedule.empty()) throw std::invalid_argument("gamma_series: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw std::invalid_argument("gamma_series: schedule must be strictly increasing and >= 1");
    }
  }

  GrowthScanner scanner(cfg, grids);
  GrowthSeries series;
  series.phi_grid = scanner.phi_grid();
  series.u_grid = grids.u_grid;
  series.psi = psi.describe();
  series.entries.reserve(schedule.size());
  double sup_gamma = 0.0;
  for (std::int64_t n : schedule) {
    const GammaPoint g = scanner.gamma(n);
    GrowthEntry e;
    e.n = n;
    e.gamma = g.gamma;
    e.ratio = g.gamma / psi.eval(static_cast<double>(n));
    e.argmax = g.argmax;
    sup_gamma = std::max(sup_gamma, g.gamma);
    series.entries.push_back(std::move(e));
  }

  const std::size_t tail_start = series.entries.size() / 2;
  double sup = 0.0, inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = tail_start; i < series.entries.size(); ++i) {
    sup = std::max(sup, series.entries[i].ratio);
    inf = std::min(inf, series.entries[i].ratio);
  }
  series.sup_ratio_tail = sup;
  series.inf_ratio_tail = inf;

  // Verdict: "bounded" when the map never grew at all; otherwise compare the
  // geometric mean of the ratio over the two halves of the tail, with a band
  // classification in between.
  if (sup_gamma <= 1.0 + 1e-9) {
    series.verdict = GrowthVerdict::Bounded;
    return series;
  }
  const std::size_t tail_len = series.entries.size() - tail_start;
  const std::size_t mid = tail_start + tail_len / 2;
  auto geomean = [&](std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t i = b; i < e; ++i) acc += std::log(std::max(series.entries[i].ratio, 1e-300));
    return std::exp(acc / static_cast<double>(std::max<std::size_t>(1, e - b)));
  };
  const double g1 = geomean(tail_start, mid);
  const double g2 = geomean(mid, series.entries.size());
  if (g2 <= 0.5 * g1) {
    series.verdict = GrowthVerdict::SubPsi;
  } else if (g2 >= 2.0 * g1) {
    series.verdict = GrowthVerdict::SuperPsi;
  } else if (inf > 0.0 && sup / inf <= 1e3) {
    series.verdict = GrowthVerdict::Band;
  } else {
    series.verdict = g2 > g1 ? GrowthVerdict::SuperPsi : GrowthVerdict::SubPsi;
  }
  return series;
}

}  // namespace slowdiff
