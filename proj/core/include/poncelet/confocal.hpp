#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "poncelet/errors.hpp"
#include "poncelet/poly.hpp"
#include "poncelet/real.hpp"

namespace poncelet {

// Confocal family of quadrics Q_lambda:
//   x_1^2/(a_1-lambda) + ... + x_d^2/(a_d-lambda) = 1,   a_1 > ... > a_d > 0.
struct ConfocalFamily {
  std::vector<double> a;

  explicit ConfocalFamily(std::vector<double> semi_axes) : a(std::move(semi_axes)) {
    if (a.size() < 2) throw NonFiniteInput("family needs d >= 2 semi-axes");
    for (size_t i = 0; i < a.size(); ++i) {
      if (!std::isfinite(a[i]) || a[i] <= 0)
        throw NonFiniteInput("semi-axes must be finite and positive");
      if (i > 0 && a[i] >= a[i - 1])
        throw NonFiniteInput("semi-axes must be strictly decreasing");
    }
  }
  int dim() const { return static_cast<int>(a.size()); }
};

// Jacobian elliptic coordinates, ordered lambda_1 > ... > lambda_d.
using EllipticCoords = std::vector<double>;
// Parameters of the d-1 quadrics tangent to a line, descending.
using CausticSet = std::vector<double>;

namespace detail {

template <class T>
std::vector<T> to_scalar(const std::vector<double>& v) {
  std::vector<T> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = T(v[i]);
  return r;
}

// The polynomial g(mu) = prod_s (lambda_s - mu), assembled from the point:
// g(mu) = prod_j (a_j - mu) - sum_i x_i^2 prod_{j != i} (a_j - mu).
template <class T>
Poly<T> elliptic_poly(const std::vector<T>& a, const std::vector<T>& x) {
  const size_t d = a.size();
  Poly<T> g = Poly<T>::from_roots_neg(a);
  for (size_t i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    std::vector<T> others;
    for (size_t j = 0; j < d; ++j)
      if (j != i) others.push_back(a[j]);
    g = g - Poly<T>::from_roots_neg(others).scaled(x[i] * x[i]);
  }
  return g;
}

}  // namespace detail

// Roots of eq. Q_lambda(x) = 1 in lambda for a fixed point; descending.
// Coordinates on a hyperplane x_i = 0 produce the exact degenerate value a_i.
template <class T>
std::vector<T> elliptic_coordinates_t(const std::vector<T>& a, const std::vector<T>& x) {
  using poncelet::abs;
  const size_t d = a.size();
  if (x.size() != d) throw NonFiniteInput("point dimension mismatch");
  std::vector<T> roots;
  Poly<T> g = detail::elliptic_poly(a, x);
  for (size_t i = 0; i < d; ++i) {
    if (x[i] == 0) {
      roots.push_back(a[i]);
      g = g.deflated_at(a[i]);
    }
  }
  if (g.degree() > 0) {
    // remaining roots lie in (a_d - |x|^2 - 1, a_1); isolate generically
    T lo = a.back();
    for (const auto& xi : x) lo -= xi * xi;
    lo -= T(1);
    T hi = a.front() + scalar_eps<T>() * a.front() * 16;
    std::vector<T> found = real_roots_in(g, lo, hi);
    if (static_cast<int>(found.size()) != g.degree())
      throw ConvergenceFailure("elliptic coordinate root isolation failed");
    // polish on the better-conditioned rational form where possible
    for (auto& r : found) {
      for (int it = 0; it < 3; ++it) {
        T f(-1), df(0);
        bool usable = true;
        for (size_t i = 0; i < d; ++i) {
          T den = a[i] - r;
          if (den == 0) { usable = false; break; }
          f += x[i] * x[i] / den;
          df += x[i] * x[i] / (den * den);
        }
        if (!usable || df == 0) break;
        T step = f / df;
        r -= step;
        if (abs(step) <= scalar_eps<T>() * (abs(r) + 1)) break;
      }
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const T& p, const T& q) { return p > q; });
  return roots;
}

// Inverse of the coordinate map: x_i^2 = prod_s (a_i - lambda_s) / prod_{j != i} (a_i - a_j).
template <class T>
std::vector<T> cartesian_from_elliptic_t(const std::vector<T>& a,
                                         const std::vector<T>& lambda,
                                         const std::vector<int>& signs) {
  using poncelet::abs;
  using poncelet::sqrt;
  const size_t d = a.size();
  std::vector<T> x(d);
  T scale(1);
  for (const auto& ai : a) scale = std::max(scale, abs(ai));
  for (size_t i = 0; i < d; ++i) {
    T num(1), den(1);
    for (size_t s = 0; s < d; ++s) num *= a[i] - lambda[s];
    for (size_t j = 0; j < d; ++j)
      if (j != i) den *= a[i] - a[j];
    T sq = num / den;
    if (sq < 0) {
      if (sq < -scalar_eps<T>() * scale * 1024)
        throw NegativeRadicand("elliptic coordinates violate interlacing");
      sq = T(0);
    }
    x[i] = (signs[i] >= 0 ? T(1) : T(-1)) * sqrt(sq);
  }
  return x;
}

// Parameters of the d-1 quadrics of the family tangent to the line
// base + t*direction; descending.  Invariant under reparametrization.
template <class T>
std::vector<T> caustic_parameters_t(const std::vector<T>& a,
                                    std::vector<T> base,
                                    std::vector<T> dir) {
  using poncelet::abs;
  using poncelet::sqrt;
  const size_t d = a.size();
  T n2(0);
  for (const auto& v : dir) n2 += v * v;
  if (n2 == 0) throw DegenerateLine("zero direction");
  T n = sqrt(n2);
  for (auto& v : dir) v /= n;
  // shift base to the point of the line closest to the origin
  T proj(0);
  for (size_t i = 0; i < d; ++i) proj += base[i] * dir[i];
  for (size_t i = 0; i < d; ++i) base[i] -= proj * dir[i];

  // F(alpha) = B^2 - 4AC after clearing denominators; the d factors
  // (a_i - alpha) divide out, leaving a degree d-1 polynomial.
  Poly<T> A = Poly<T>::constant(T(0)), B = A, C = Poly<T>::from_roots_neg(a).scaled(T(-1));
  for (size_t i = 0; i < d; ++i) {
    std::vector<T> others;
    for (size_t j = 0; j < d; ++j)
      if (j != i) others.push_back(a[j]);
    Poly<T> pi = Poly<T>::from_roots_neg(others);
    A = A + pi.scaled(dir[i] * dir[i]);
    B = B + pi.scaled(T(2) * base[i] * dir[i]);
    C = C + pi.scaled(base[i] * base[i]);
  }
  Poly<T> F = B * B - (A * C).scaled(T(4));
  for (size_t i = 0; i < d; ++i) F = F.deflated_at(a[i]);
  F.trim();
  if (F.degree() != static_cast<int>(d) - 1)
    throw RootIsolationFailure("unexpected degree of tangency polynomial");

  std::vector<T> roots;
  if (d == 2) {
    roots.push_back(T(-F.c[0] / F.c[1]));
  } else if (d == 3) {
    T qa = F.c[2], qb = F.c[1], qc = F.c[0];
    T disc = qb * qb - 4 * qa * qc;
    T scale = qb * qb + abs(4 * qa * qc);
    if (disc < 0) {
      if (scale > 0 && disc < -scalar_eps<T>() * scale * 4096)
        throw RootIsolationFailure("complex tangency parameters");
      disc = T(0);  // grazing double root
    }
    T sd = sqrt(disc);
    // numerically stable quadratic roots
    T q = (qb >= 0) ? T(-(qb + sd) / 2) : T(-(qb - sd) / 2);
    if (q == 0) {
      roots.push_back(T(0));
      roots.push_back(T(0));
    } else {
      roots.push_back(T(q / qa));
      roots.push_back(T(qc / q));
    }
  } else {
    T bound = root_bound(F);
    roots = real_roots_in(F, T(-bound), bound, T(scalar_eps<T>() * root_bound(F) * 1024));
    if (static_cast<int>(roots.size()) != F.degree())
      throw RootIsolationFailure("tangency root isolation failed");
  }
  std::sort(roots.begin(), roots.end(), [](const T& p, const T& q) { return p > q; });
  return roots;
}

// Band index of a caustic parameter within {-inf, a_d, ..., a_1}:
// type k means alpha lies in (boundary_k, boundary_{k+1}) with boundary_0 = -inf.
inline int caustic_type(const ConfocalFamily& fam, double alpha) {
  int t = 0;
  for (int i = fam.dim() - 1; i >= 0; --i)
    if (alpha > fam.a[i]) ++t;
  return t;
}

// P(x) = (a_1-x)...(a_d-x)(alpha_1-x)...(alpha_{d-1}-x) with its exact roots.
struct AdmissiblePolynomial {
  Poly<double> poly;
  std::vector<double> roots;  // ascending
};

EllipticCoords elliptic_coordinates(const ConfocalFamily& fam, const std::vector<double>& point);
std::vector<double> cartesian_from_elliptic(const ConfocalFamily& fam,
                                            const EllipticCoords& coords,
                                            const std::vector<int>& signs);
CausticSet caustic_parameters(const ConfocalFamily& fam, const std::vector<double>& base,
                              const std::vector<double>& direction);
AdmissiblePolynomial admissibility_polynomial(const ConfocalFamily& fam,
                                              const CausticSet& caustics);
bool check_lemma1(const EllipticCoords& coords, const AdmissiblePolynomial& poly, double slack);

}  // namespace poncelet
