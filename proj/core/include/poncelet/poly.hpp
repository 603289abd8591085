#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "poncelet/errors.hpp"
#include "poncelet/real.hpp"

namespace poncelet {

// Dense univariate polynomial, coefficients in ascending degree order.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() : c{T(0)} {}
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) c.push_back(T(0));
  }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  void trim() {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
  }

  T operator()(const T& x) const {
    T r = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * x + c[i];
    return r;
  }

  Poly deriv() const {
    if (c.size() <= 1) return Poly();
    std::vector<T> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<int>(i));
    return Poly(std::move(d));
  }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(std::move(r));
  }

  Poly operator-(const Poly& o) const {
    std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return Poly(std::move(r));
  }

  Poly operator*(const Poly& o) const {
    std::vector<T> r(c.size() + o.c.size() - 1, T(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(std::move(r));
  }

  Poly scaled(const T& s) const {
    std::vector<T> r = c;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }

  // Coefficients of u -> P(s + u)  (Taylor shift, in-place synthetic scheme).
  Poly shifted(const T& s) const {
    std::vector<T> a = c;
    int n = static_cast<int>(a.size());
    for (int k = 0; k < n - 1; ++k)
      for (int j = n - 2; j >= k; --j) a[j] += s * a[j + 1];
    return Poly(std::move(a));
  }

  // Quotient of division by (x - r); the remainder P(r) is dropped.
  Poly deflated_at(const T& r) const {
    if (c.size() <= 1) return Poly();
    std::vector<T> q(c.size() - 1);
    T b = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
      q[i] = b;
      b = c[i] + r * b;
    }
    return Poly(std::move(q));
  }

  // prod_i (roots[i] - x)
  static Poly from_roots_neg(const std::vector<T>& roots) {
    Poly p = constant(T(1));
    for (const auto& r : roots) p = p * Poly(std::vector<T>{r, T(-1)});
    return p;
  }
};

// Bisection for a continuous function with a sign change on [lo, hi].
template <class T, class F>
T bisect_root(const F& f, T lo, T hi, T flo, T fhi) {
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw RootIsolationFailure("no sign change in bracket");
  int iters = bisection_iterations<T>();
  for (int i = 0; i < iters; ++i) {
    T mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    T fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return (lo + hi) / 2;
}

template <class T, class F>
T bisect_root(const F& f, T lo, T hi) {
  return bisect_root(f, lo, hi, f(lo), f(hi));
}

// Cauchy bound on the absolute value of the roots.
template <class T>
T root_bound(const Poly<T>& p) {
  using poncelet::abs;
  int n = p.degree();
  while (n > 0 && p.c[n] == 0) --n;
  if (n == 0) return T(1);
  T m(0);
  for (int i = 0; i < n; ++i) m = std::max(m, T(abs(p.c[i]) / abs(p.c[n])));
  return T(1) + m;
}

// All real roots of p in [lo, hi], ascending.  Splits at critical points so
// each bisection bracket is monotone; near-grazing double roots are reported
// as the critical point when |p| there is below `grazing_tol`.
template <class T>
std::vector<T> real_roots_in(const Poly<T>& p, const T& lo, const T& hi,
                             const T& grazing_tol = T(0)) {
  using poncelet::abs;
  Poly<T> q = p;
  q.trim();
  std::vector<T> out;
  if (q.degree() == 0) return out;
  if (q.degree() == 1) {
    T r = -q.c[0] / q.c[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  std::vector<T> crit = real_roots_in(q.deriv(), lo, hi, T(0));
  std::vector<T> pts;
  pts.push_back(lo);
  for (const auto& x : crit)
    if (x > lo && x < hi) pts.push_back(x);
  pts.push_back(hi);
  auto f = [&q](const T& x) { return q(x); };
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    T a = pts[i], b = pts[i + 1];
    T fa = q(a), fb = q(b);
    if (fa == 0 && i == 0) out.push_back(a);
    if ((fa > 0) != (fb > 0) || fa == 0 || fb == 0) {
      T r = bisect_root(f, a, b, fa, fb);
      if (out.empty() || r > out.back()) out.push_back(r);
    } else if (grazing_tol > 0 && i + 2 < pts.size() + 1 && i > 0) {
      // interval starting at a critical point: check for a grazing double root
      if (abs(fa) <= grazing_tol && (out.empty() || a > out.back())) {
        out.push_back(a);
        out.push_back(a);
      }
    }
  }
  if (!pts.empty()) {
    T fb = q(pts.back());
    if (fb == 0 && (out.empty() || pts.back() > out.back())) out.push_back(pts.back());
  }
  return out;
}

}  // namespace poncelet
