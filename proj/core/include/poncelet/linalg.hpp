#pragma once

#include <algorithm>
#include <vector>

#include "poncelet/real.hpp"

namespace poncelet {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, T(0)) {}

  T& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  Matrix transposed() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
};

// Determinant by LU with partial pivoting.
template <class T>
T determinant(Matrix<T> m) {
  using poncelet::abs;
  int n = m.rows;
  T det(1);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    T best = abs(m.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      T v = abs(m.at(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0) return T(0);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      det = -det;
    }
    det *= m.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      T f = m.at(i, k) / m.at(k, k);
      for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return det;
}

// Singular values via one-sided Jacobi, descending.
template <class T>
std::vector<T> singular_values(Matrix<T> a) {
  using poncelet::abs;
  using poncelet::sqrt;
  if (a.rows < a.cols) a = a.transposed();
  const int m = a.rows, n = a.cols;
  const T eps = scalar_eps<T>();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        T app(0), aqq(0), apq(0);
        for (int i = 0; i < m; ++i) {
          app += a.at(i, p) * a.at(i, p);
          aqq += a.at(i, q) * a.at(i, q);
          apq += a.at(i, p) * a.at(i, q);
        }
        if (abs(apq) <= eps * sqrt(app * aqq) || apq == 0) continue;
        converged = false;
        T tau = (aqq - app) / (2 * apq);
        T t = (tau >= 0) ? T(1) / (tau + sqrt(1 + tau * tau))
                         : T(-1) / (-tau + sqrt(1 + tau * tau));
        T cs = T(1) / sqrt(1 + t * t);
        T sn = cs * t;
        for (int i = 0; i < m; ++i) {
          T vp = a.at(i, p), vq = a.at(i, q);
          a.at(i, p) = cs * vp - sn * vq;
          a.at(i, q) = sn * vp + cs * vq;
        }
      }
    }
    if (converged) break;
  }
  std::vector<T> sv(n);
  for (int j = 0; j < n; ++j) {
    T s(0);
    for (int i = 0; i < m; ++i) s += a.at(i, j) * a.at(i, j);
    sv[j] = sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), [](const T& x, const T& y) { return x > y; });
  return sv;
}

struct RankDecision {
  int rank = 0;
  double residual = 0;  // sigma_{rank+1}/sigma_max, 0 if full rank
  bool certified = false;
};

// Numerical rank with threshold 2^{-p/2} * sigma_max, certified by agreement
// of the decision at p and 2p bits.
RankDecision rank_decision(const Matrix<BigReal>& m, unsigned precision_bits);

}  // namespace poncelet
