#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poncelet/confocal.hpp"

namespace poncelet {

// ---------------------------------------------------------------------------
// Templated geometry kernel (shared by the double-precision engine and the
// high-precision closure polisher).

template <class T>
T dot(const std::vector<T>& u, const std::vector<T>& v) {
  T s(0);
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

template <class T>
T norm(const std::vector<T>& u) {
  using poncelet::sqrt;
  return sqrt(dot(u, u));
}

template <class T>
void normalize(std::vector<T>& u) {
  T n = norm(u);
  for (auto& v : u) v /= n;
}

// Q_lambda(x) - 1
template <class T>
T quadric_eval(const std::vector<T>& a, const T& lambda, const std::vector<T>& x) {
  T s(-1);
  for (size_t i = 0; i < a.size(); ++i) s += x[i] * x[i] / (a[i] - lambda);
  return s;
}

template <class T>
std::vector<T> quadric_grad(const std::vector<T>& a, const T& lambda,
                            const std::vector<T>& x) {
  std::vector<T> g(a.size());
  for (size_t i = 0; i < a.size(); ++i) g[i] = 2 * x[i] / (a[i] - lambda);
  return g;
}

// Parameters t of the intersections of p + t v with Q_lambda, ascending.
template <class T>
std::vector<T> ray_quadric_roots(const std::vector<T>& a, const T& lambda,
                                 const std::vector<T>& p, const std::vector<T>& v) {
  using poncelet::abs;
  using poncelet::sqrt;
  T A(0), B(0);
  for (size_t i = 0; i < a.size(); ++i) {
    A += v[i] * v[i] / (a[i] - lambda);
    B += 2 * p[i] * v[i] / (a[i] - lambda);
  }
  T C = quadric_eval(a, lambda, p);
  std::vector<T> out;
  if (A == 0) {
    if (B != 0) out.push_back(-C / B);
    return out;
  }
  T disc = B * B - 4 * A * C;
  if (disc < 0) return out;
  T sd = sqrt(disc);
  T q = (B >= 0) ? T(-(B + sd) / 2) : T(-(B - sd) / 2);
  if (q == 0) {
    out.push_back(T(0));
    out.push_back(T(0));
  } else {
    out.push_back(q / A);
    out.push_back(C / q);
  }
  if (out[0] > out[1]) std::swap(out[0], out[1]);
  return out;
}

// Billiard reflection at a point of Q_lambda: speed and tangential component
// preserved, normal component flipped.
template <class T>
std::vector<T> reflect_t(const std::vector<T>& a, const T& lambda,
                         const std::vector<T>& point, const std::vector<T>& incoming,
                         double on_tol = 1e-9, double grazing_tol = 1e-12) {
  using poncelet::abs;
  if (norm(incoming) == 0) throw GrazingIncidence("zero incoming direction");
  if (abs(quadric_eval(a, lambda, point)) > T(on_tol))
    throw PointNotOnQuadric();
  std::vector<T> n = quadric_grad(a, lambda, point);
  normalize(n);
  T vn = dot(incoming, n) / norm(incoming);
  if (abs(vn) < T(grazing_tol)) throw GrazingIncidence();
  T c = dot(incoming, n);
  std::vector<T> out = incoming;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= 2 * c * n[i];
  return out;
}

// One step of a billiard ordered game: advance to Q_beta with required
// reflection side (+1: hit from inside, -1: from outside), reflect there.
// Returns the hit point; p and v are updated in place.
template <class T>
std::vector<T> game_step(const std::vector<T>& a, const T& beta, int side,
                         std::vector<T>& p, std::vector<T>& v, int index_for_error) {
  T c0 = quadric_eval(a, beta, p);
  std::vector<T> roots = ray_quadric_roots(a, beta, p, v);
  T tol = scalar_eps<T>() * 1024;
  T t(0);
  if (side > 0) {
    // must start inside the ellipsoid; unique forward crossing
    if (c0 > tol || roots.size() < 2 || roots.back() <= 0)
      throw OrderViolation("cannot reach quadric from inside at game index " +
                           std::to_string(index_for_error));
    t = roots.back();
  } else {
    if (c0 < -tol || roots.size() < 2 || roots.front() <= tol)
      throw OrderViolation("cannot reach quadric from outside at game index " +
                           std::to_string(index_for_error));
    t = roots.front();
  }
  std::vector<T> hit(p.size());
  for (size_t i = 0; i < p.size(); ++i) hit[i] = p[i] + t * v[i];
  v = reflect_t(a, beta, hit, v, 1e-6);
  normalize(v);
  p = hit;
  return hit;
}

// ---------------------------------------------------------------------------
// Double-precision engine types.

enum class Side { inside, outside };  // which side of the wall the domain is on

struct Wall {
  double lambda = 0;
  // interior satisfies sign * (Q_lambda(x) - 1) <= 0; sign=+1 for "inside"
  int interior_sign = 1;
};

struct Domain {
  ConfocalFamily family;
  std::vector<Wall> walls;

  // Closed lambda-interval bounds [beta'_s, beta''_s] implied by the walls;
  // unbounded/unattained ends fall back to the natural band edges
  // (lo uses -infinity for s = d).
  std::vector<std::pair<double, double>> lambda_bounds() const;
};

enum class BounceClass { inside, outside };

struct BounceRecord {
  std::vector<double> vertex;
  double lambda = 0;        // quadric parameter of the wall hit
  BounceClass cls = BounceClass::inside;
  int coord_index = 0;      // 1-based s with lambda in (a_{s+1}, a_s)
};

struct Trajectory {
  std::vector<std::vector<double>> vertices;     // size k+1 for k bounces
  std::vector<std::vector<double>> directions;   // unit, one per segment
  std::vector<BounceRecord> bounces;
  CausticSet caustics;
  double max_caustic_deviation = 0;
  // dense samples of the motion; empty when segments are straight lines
  std::vector<std::vector<double>> path;
};

struct Signature {
  std::vector<int> i;  // entries in {+1, -1}
};

struct WindingCounts {
  std::vector<int> n;
};

// 1-based band index s of a quadric parameter: lambda in (a_{s+1}, a_s).
int affected_coordinate(const ConfocalFamily& fam, double lambda);

std::vector<double> reflect(const ConfocalFamily& fam, double boundary_lambda,
                            const std::vector<double>& point,
                            const std::vector<double>& incoming);

struct SegmentHit {
  std::vector<double> point;
  double lambda = 0;
  int coord_index = 0;
};

SegmentHit trace_segment(const Domain& dom, const std::vector<double>& point,
                         const std::vector<double>& direction);

BounceClass classify_reflection(const EllipticCoords& before, const EllipticCoords& at,
                                const EllipticCoords& after, int s);

Trajectory simulate(const Domain& dom, std::vector<double> start,
                    std::vector<double> direction, int num_bounces);

std::vector<std::pair<double, double>> lambda_ranges(const Domain& dom,
                                                     const AdmissiblePolynomial& poly);

WindingCounts winding_counts(const ConfocalFamily& fam, const Trajectory& traj,
                             const std::vector<std::pair<double, double>>& ranges,
                             int period);

// Same counting applied to an explicit closed sampling of one period.
WindingCounts winding_counts_from_path(const ConfocalFamily& fam,
                                       const std::vector<std::vector<double>>& path,
                                       const std::vector<std::pair<double, double>>& ranges);

std::optional<int> detect_period(const Trajectory& traj, double tol_pos, double tol_dir);

bool validate_signature(const std::vector<double>& betas, const Signature& sig);

Trajectory play_ordered_game(const ConfocalFamily& fam, const std::vector<double>& betas,
                             const Signature& sig, std::vector<double> start,
                             std::vector<double> direction, int rounds);

// d = 3 billiard constrained to the ellipsoid E = Q_0, boundary curves E ∩ Q_beta.
Trajectory geodesic_billiard_on_ellipsoid(const ConfocalFamily& fam,
                                          const std::vector<Wall>& boundaries,
                                          std::vector<double> start,
                                          std::vector<double> direction,
                                          int num_bounces, double max_arc_length = 1e4);

}  // namespace poncelet
