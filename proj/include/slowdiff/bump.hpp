#pragma once

// Radial smooth cutoff A on the open unit disc D in R^d:
//   A(u) = h(t),  t = (r_support - |u|) / (r_support - r_plateau)  clamped to [0,1],
//   h(t) = g(t) / (g(t) + g(1-t)),  g(s) = exp(-1/s) for s > 0, g(0) = 0.
// A == 1 for |u| <= r_plateau, A == 0 for |u| >= r_support, smooth in between.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace slowdiff {

class BumpProfile {
 public:
  BumpProfile(int dim = 1, double r_plateau = 0.3, double r_support = 0.6)
      : dim_(dim), r_plateau_(r_plateau), r_support_(r_support) {
    if (dim_ < 1) throw std::invalid_argument("BumpProfile: dim must be >= 1");
    if (!(0.0 < r_plateau_ && r_plateau_ < r_support_ && r_support_ < 1.0)) {
      throw std::invalid_argument("BumpProfile: need 0 < r_plateau < r_support < 1");
    }
  }

  int dim() const { return dim_; }
  double r_plateau() const { return r_plateau_; }
  double r_support() const { return r_support_; }

  double value_radial(double r) const {
    r = std::fabs(r);
    if (r <= r_plateau_) return 1.0;
    if (r >= r_support_) return 0.0;
    return smoothstep((r_support_ - r) / (r_support_ - r_plateau_));
  }

  /// dA/dr at radius r; zero on the plateau and outside the support.
  double deriv_radial(double r) const {
    r = std::fabs(r);
    if (r <= r_plateau_ || r >= r_support_) return 0.0;
    const double w = r_support_ - r_plateau_;
    return smoothstep_deriv((r_support_ - r) / w) * (-1.0 / w);
  }

  double eval(std::span<const double> u) const {
    return value_radial(radius_checked(u));
  }

  std::vector<double> grad(std::span<const double> u) const {
    const double r = radius_checked(u);
    std::vector<double> g(u.size(), 0.0);
    const double dr = deriv_radial(r);
    if (dr != 0.0 && r > 0.0) {
      for (size_t i = 0; i < u.size(); ++i) g[i] = dr * u[i] / r;
    }
    return g;
  }

  /// sum_i |dA/du_i| at u; the quantity entering the max-row-sum norm.
  double grad_l1(std::span<const double> u) const {
    const double r = radius_checked(u);
    const double dr = deriv_radial(r);
    if (dr == 0.0 || r == 0.0) return 0.0;
    double l1 = 0.0;
    for (double ui : u) l1 += std::fabs(ui);
    return std::fabs(dr) * l1 / r;
  }

 private:
  double radius_checked(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != dim_) {
      throw std::invalid_argument("BumpProfile: wrong dimension");
    }
    double s = 0.0;
    for (double ui : u) s += ui * ui;
    const double r = std::sqrt(s);
    if (r >= 1.0) throw std::domain_error("BumpProfile: point outside the open disc");
    return r;
  }

  static double mollifier(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
  static double mollifier_deriv(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0;
  }

  static double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g = mollifier(t);
    return g / (g + mollifier(1.0 - t));
  }

  // h'(t) = (g'(t) g(1-t) + g(t) g'(1-t)) / (g(t) + g(1-t))^2
  static double smoothstep_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double g = mollifier(t);
    const double gc = mollifier(1.0 - t);
    const double num = mollifier_deriv(t) * gc + g * mollifier_deriv(1.0 - t);
    const double den = g + gc;
    return num / (den * den);
  }

  int dim_;
  double r_plateau_;
  double r_support_;
};

}  // namespace slowdiff
