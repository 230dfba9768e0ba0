#pragma once

// Small dense square matrices for Jacobian bookkeeping. Sizes here are d+2
// with d the disc dimension, so nothing clever is needed.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slowdiff {

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix operator*(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("Matrix: size mismatch");
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double v = (*this)(i, k);
        if (v == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) out(i, j) += v * rhs(k, j);
      }
    }
    return out;
  }

  /// Determinant by LU with partial pivoting.
  double det() const {
    if (n_ == 0) throw std::invalid_argument("Matrix: empty");
    std::vector<double> lu = a_;
    double d = 1.0;
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n_; ++r) {
        if (std::fabs(lu[r * n_ + c]) > std::fabs(lu[piv * n_ + c])) piv = r;
      }
      if (piv != c) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(lu[c * n_ + j], lu[piv * n_ + j]);
        d = -d;
      }
      const double p = lu[c * n_ + c];
      if (p == 0.0) return 0.0;
      d *= p;
      for (std::size_t r = c + 1; r < n_; ++r) {
        const double f = lu[r * n_ + c] / p;
        if (f == 0.0) continue;
        for (std::size_t j = c; j < n_; ++j) lu[r * n_ + j] -= f * lu[c * n_ + j];
      }
    }
    return d;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// ||Q|| = max_i sum_j |q_ij|  (maximum absolute row sum).
inline double matrix_norm_maxrow(const Matrix& q) {
  if (q.size() == 0) throw std::invalid_argument("matrix_norm_maxrow: empty matrix");
  double best = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) row += std::fabs(q(i, j));
    best = std::max(best, row);
  }
  return best;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  }
  return m;
}

}  // namespace slowdiff
