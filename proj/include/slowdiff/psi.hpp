#pragma once

// Target growth profiles Psi: positive, increasing, unbounded, o(x).

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slowdiff {

class PsiSpec {
 public:
  enum class Kind { Power, Log, LogLog, Table };

  static PsiSpec power(double beta) {
    PsiSpec p;
    p.kind_ = Kind::Power;
    p.beta_ = beta;
    p.validate();
    return p;
  }
  static PsiSpec log() {
    PsiSpec p;
    p.kind_ = Kind::Log;
    return p;
  }
  static PsiSpec loglog() {
    PsiSpec p;
    p.kind_ = Kind::LogLog;
    return p;
  }
  static PsiSpec table(std::vector<std::pair<double, double>> points) {
    PsiSpec p;
    p.kind_ = Kind::Table;
    p.table_ = std::move(points);
    p.validate();
    return p;
  }

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::Power: {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "power:%g", beta_);
        return buf;
      }
      case Kind::Log:
        return "log";
      case Kind::LogLog:
        return "loglog";
      case Kind::Table:
        return "table[" + std::to_string(table_.size()) + "]";
    }
    return "?";
  }

  double eval(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("PsiSpec: eval requires x >= 1");
    switch (kind_) {
      case Kind::Power:
        return std::pow(x, beta_);
      case Kind::Log:
        return std::log1p(x);
      case Kind::LogLog:
        return std::log1p(std::log1p(x));
      case Kind::Table:
        return eval_table(x);
    }
    return 0.0;
  }

 private:
  void validate() const {
    if (kind_ == Kind::Power) {
      if (!(beta_ > 0.0)) throw std::invalid_argument("psi: \"positive\" violated (beta <= 0)");
      if (!(beta_ < 1.0)) throw std::invalid_argument("psi: \"o(x)\" violated (beta >= 1)");
      return;
    }
    if (kind_ != Kind::Table) return;
    if (table_.size() < 2) throw std::invalid_argument("psi: table needs at least 2 points");
    for (size_t i = 0; i < table_.size(); ++i) {
      if (!(table_[i].second > 0.0)) throw std::invalid_argument("psi: \"positive\" violated");
      if (i > 0) {
        if (!(table_[i].first > table_[i - 1].first)) {
          throw std::invalid_argument("psi: \"increasing\" violated (x not strictly increasing)");
        }
        if (!(table_[i].second > table_[i - 1].second)) {
          throw std::invalid_argument("psi: \"increasing\" violated (values not strictly increasing)");
        }
      }
    }
    // o(x) proxy on the tail: Psi(x)/x non-increasing over the last half of the table
    for (size_t i = table_.size() / 2; i + 1 < table_.size(); ++i) {
      const double r0 = table_[i].second / table_[i].first;
      const double r1 = table_[i + 1].second / table_[i + 1].first;
      if (r1 > r0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("psi: \"o(x)\" violated (Psi(x)/x increasing on tail)");
      }
    }
  }

  double eval_table(double x) const {
    // monotone piecewise-linear; extended with the last/first segment slope
    size_t hi = 1;
    while (hi + 1 < table_.size() && table_[hi].first < x) ++hi;
    const auto& [x0, y0] = table_[hi - 1];
    const auto& [x1, y1] = table_[hi];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }

  Kind kind_ = Kind::Power;
  double beta_ = 0.5;
  std::vector<std::pair<double, double>> table_;
};

}  // namespace slowdiff
