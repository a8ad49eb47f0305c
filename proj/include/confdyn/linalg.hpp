#pragma once

// Small dense linear algebra for the low-dimensional flow computations
// (ambient dimensions here are at most 5 or 6).

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace confdyn {

using Vec = std::vector<double>;

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline Vec sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scale(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// Row-major dense matrix.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat diagonal(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec apply(const Vec& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    Vec r(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  // Covector transport: (M^T a)_i = sum_j M(j,i) a_j.
  Vec apply_transposed(const Vec& a) const {
    assert(static_cast<int>(a.size()) == rows_);
    Vec r(cols_, 0.0);
    for (int j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows_; ++i) s += (*this)(i, j) * a[i];
      r[j] = s;
    }
    return r;
  }

  Mat mul(const Mat& b) const {
    assert(cols_ == b.rows_);
    Mat r(rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  double max_abs_diff(const Mat& b) const {
    assert(rows_ == b.rows_ && cols_ == b.cols_);
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - b.a_[i]));
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// LU with partial pivoting; returns the determinant (0.0 when a pivot
// degenerates, which callers treat as singular).
inline double determinant(Mat m) {
  const int n = m.rows();
  assert(n == m.cols());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
// Returns false when a pivot falls below `pivot_tol` (singular system).
inline bool solve_linear(Mat a, Vec b, Vec& x, double pivot_tol = 1e-12) {
  const int n = a.rows();
  assert(n == a.cols() && static_cast<int>(b.size()) == n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) < pivot_tol) return false;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      std::swap(b[piv], b[c]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a(r, j) * x[j];
    x[r] = s / a(r, r);
  }
  return true;
}

}  // namespace confdyn
