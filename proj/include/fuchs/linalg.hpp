#pragma once

// Small dense matrices over exact fields (for companion systems, cyclic
// vectors, Wronskian-style solves) and over BigComplex (for transition
// matrices).  Everything here is O(n^3) with tiny n.

#include <vector>

#include "fuchs/bigcomplex.hpp"
#include "fuchs/rat.hpp"

namespace fuchs {

template <class T>
struct Mat {
  std::vector<std::vector<T>> a;

  Mat() = default;
  Mat(int r, int c) : a(r, std::vector<T>(c, T(0))) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = T(1);
    return m;
  }
  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
  std::vector<T>& operator[](int i) { return a[i]; }
  const std::vector<T>& operator[](int i) const { return a[i]; }
  bool operator==(const Mat& o) const { return a == o.a; }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
      for (int k = 0; k < x.cols(); ++k) {
        if (x[i][k] == T(0)) continue;
        for (int j = 0; j < y.cols(); ++j) r[i][j] += x[i][k] * y[k][j];
      }
    return r;
  }
  friend std::vector<T> operator*(const Mat& x, const std::vector<T>& v) {
    std::vector<T> r(x.rows(), T(0));
    for (int i = 0; i < x.rows(); ++i)
      for (int k = 0; k < x.cols(); ++k) r[i] += x[i][k] * v[k];
    return r;
  }
};

// row-reduce in place; returns rank.  Records pivot columns if asked.
template <class T>
int row_reduce(Mat<T>& m, std::vector<int>* pivots = nullptr) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int piv = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (!(m[r][col] == T(0))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m.a[rank], m.a[piv]);
    T inv = T(1) / m[rank][col];
    for (auto& v : m.a[rank]) v = v * inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || m[r][col] == T(0)) continue;
      T f = m[r][col];
      for (int j = 0; j < m.cols(); ++j) m[r][j] = m[r][j] - f * m[rank][j];
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

// solve M x = b (square, nonsingular); throws on singular input
template <class T>
std::vector<T> solve(Mat<T> m, std::vector<T> b) {
  int n = m.rows();
  if (n != m.cols() || static_cast<int>(b.size()) != n) throw error("solve: shape mismatch");
  for (int i = 0; i < n; ++i) m[i].push_back(b[i]);
  std::vector<int> pivots;
  int rank = row_reduce(m, &pivots);
  if (rank < n) throw error("solve: singular matrix");
  std::vector<T> x(n, T(0));
  for (int r = 0; r < n; ++r) x[pivots[r]] = m[r][n];
  for (int r = 0; r < n; ++r)
    if (pivots[r] >= n) throw error("solve: inconsistent system");
  return x;
}

// ---------------------------------------------------------------------------
// complex matrices for numeric transport
// ---------------------------------------------------------------------------

struct CMat {
  std::vector<std::vector<BigComplex>> a;

  CMat() = default;
  CMat(int r, int c, mpfr_prec_t prec)
      : a(r, std::vector<BigComplex>(c, BigComplex(prec))) {}
  static CMat identity(int n, mpfr_prec_t prec) {
    CMat m(n, n, prec);
    for (int i = 0; i < n; ++i) m.a[i][i] = BigComplex(1L, prec);
    return m;
  }
  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
  std::vector<BigComplex>& operator[](int i) { return a[i]; }
  const std::vector<BigComplex>& operator[](int i) const { return a[i]; }

  friend CMat operator*(const CMat& x, const CMat& y) {
    mpfr_prec_t prec = x.rows() && x.cols() ? x[0][0].precision() : 64;
    CMat r(x.rows(), y.cols(), prec);
    for (int i = 0; i < x.rows(); ++i)
      for (int k = 0; k < x.cols(); ++k)
        for (int j = 0; j < y.cols(); ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
  }
  friend CMat operator-(const CMat& x, const CMat& y) {
    mpfr_prec_t prec = x.rows() && x.cols() ? x[0][0].precision() : 64;
    CMat r(x.rows(), x.cols(), prec);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) r[i][j] = x[i][j] - y[i][j];
    return r;
  }
  friend std::vector<BigComplex> operator*(const CMat& x, const std::vector<BigComplex>& v) {
    mpfr_prec_t prec = x.rows() && x.cols() ? x[0][0].precision() : 64;
    std::vector<BigComplex> r(x.rows(), BigComplex(prec));
    for (int i = 0; i < x.rows(); ++i)
      for (int k = 0; k < x.cols(); ++k) r[i] += x[i][k] * v[k];
    return r;
  }
};

// max row-sum norm
inline BigFloat norm_inf(const CMat& m) {
  mpfr_prec_t prec = m.rows() && m.cols() ? m[0][0].precision() : 64;
  BigFloat best(0L, prec);
  for (int i = 0; i < m.rows(); ++i) {
    BigFloat s(0L, prec);
    for (int j = 0; j < m.cols(); ++j) s += abs(m[i][j]);
    best = max(best, s);
  }
  return best;
}

// Gaussian elimination with magnitude pivoting.
inline std::vector<BigComplex> csolve(CMat m, std::vector<BigComplex> b) {
  int n = m.rows();
  if (n != m.cols() || static_cast<int>(b.size()) != n) throw error("csolve: shape mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    BigFloat best = abs(m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      BigFloat v = abs(m[r][col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best.is_zero()) throw error("csolve: singular matrix");
    std::swap(m.a[col], m.a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      BigComplex f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigComplex> x(n, BigComplex(b.empty() ? 64 : b[0].precision()));
  for (int i = n - 1; i >= 0; --i) {
    BigComplex s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

inline CMat cinverse(const CMat& m) {
  int n = m.rows();
  mpfr_prec_t prec = n ? m[0][0].precision() : 64;
  CMat inv(n, n, prec);
  for (int col = 0; col < n; ++col) {
    std::vector<BigComplex> e(n, BigComplex(prec));
    e[col] = BigComplex(1L, prec);
    auto x = csolve(m, e);
    for (int i = 0; i < n; ++i) inv[i][col] = x[i];
  }
  return inv;
}

inline BigComplex cdet(CMat m) {
  int n = m.rows();
  mpfr_prec_t prec = n ? m[0][0].precision() : 64;
  BigComplex det(1L, prec);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    BigFloat best = abs(m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      BigFloat v = abs(m[r][col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best.is_zero()) return BigComplex(prec);
    if (piv != col) {
      std::swap(m.a[col], m.a[piv]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      BigComplex f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace fuchs
