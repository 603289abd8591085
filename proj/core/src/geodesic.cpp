#include <algorithm>
#include <cmath>

#include "poncelet/dynamics.hpp"

namespace poncelet {

namespace {

// Constraint surface: the ellipsoid g(x) = sum x_i^2/a_i - 1 = 0.

std::vector<double> surface_grad(const std::vector<double>& a, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) g[i] = 2 * x[i] / a[i];
  return g;
}

void project_to_surface(const std::vector<double>& a, std::vector<double>& x) {
  for (int it = 0; it < 3; ++it) {
    double g = -1, n2 = 0;
    std::vector<double> grad = surface_grad(a, x);
    for (size_t i = 0; i < x.size(); ++i) {
      g += x[i] * x[i] / a[i];
      n2 += grad[i] * grad[i];
    }
    if (n2 < 1e-300) throw IntegrationFailure("vanishing surface gradient");
    double c = g / n2;
    for (size_t i = 0; i < x.size(); ++i) x[i] -= c * grad[i];
    if (std::abs(g) < 1e-15) break;
  }
}

void project_tangent(const std::vector<double>& a, const std::vector<double>& x,
                     std::vector<double>& v) {
  std::vector<double> n = surface_grad(a, x);
  normalize(n);
  double c = dot(v, n);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= c * n[i];
}

// x'' = mu * grad g keeps |v| constant and x on the surface.
void accel(const std::vector<double>& a, const std::vector<double>& x,
           const std::vector<double>& v, std::vector<double>& out) {
  std::vector<double> grad = surface_grad(a, x);
  double vHv = 0, n2 = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    vHv += v[i] * v[i] * 2 / a[i];
    n2 += grad[i] * grad[i];
  }
  double mu = -vHv / n2;
  out.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = mu * grad[i];
}

struct State {
  std::vector<double> x, v;
};

void rk4_step(const std::vector<double>& a, State& st, double h) {
  const size_t d = st.x.size();
  std::vector<double> k1, k2, k3, k4, xt(d), vt(d);
  accel(a, st.x, st.v, k1);
  for (size_t i = 0; i < d; ++i) {
    xt[i] = st.x[i] + h / 2 * st.v[i];
    vt[i] = st.v[i] + h / 2 * k1[i];
  }
  accel(a, xt, vt, k2);
  std::vector<double> v2 = vt;
  for (size_t i = 0; i < d; ++i) {
    xt[i] = st.x[i] + h / 2 * v2[i];
    vt[i] = st.v[i] + h / 2 * k2[i];
  }
  accel(a, xt, vt, k3);
  std::vector<double> v3 = vt;
  for (size_t i = 0; i < d; ++i) {
    xt[i] = st.x[i] + h * v3[i];
    vt[i] = st.v[i] + h * k3[i];
  }
  accel(a, xt, vt, k4);
  for (size_t i = 0; i < d; ++i) {
    st.x[i] += h / 6 * (st.v[i] + 2 * v2[i] + 2 * v3[i] + vt[i]);
    st.v[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  project_to_surface(a, st.x);
  project_tangent(a, st.x, st.v);
  normalize(st.v);
}

double wall_excess(const std::vector<double>& a, const Wall& w, const std::vector<double>& x) {
  return w.interior_sign * quadric_eval<double>(a, w.lambda, x);
}

}  // namespace

Trajectory geodesic_billiard_on_ellipsoid(const ConfocalFamily& fam,
                                          const std::vector<Wall>& boundaries,
                                          std::vector<double> start,
                                          std::vector<double> direction,
                                          int num_bounces, double max_arc_length) {
  const auto& a = fam.a;
  if (fam.dim() != 3) throw NonFiniteInput("constrained billiard requires d = 3");
  if (std::abs(quadric_eval<double>(a, 0.0, start)) > 1e-9)
    throw PointNotOnQuadric("start not on the ellipsoid");
  project_to_surface(a, start);
  project_tangent(a, start, direction);
  if (norm(direction) < 1e-12) throw GrazingIncidence("direction normal to the surface");
  normalize(direction);
  for (const Wall& w : boundaries)
    if (wall_excess(a, w, start) > 1e-9)
      throw EscapeDetected("start outside the constrained domain");

  Trajectory traj;
  traj.caustics = caustic_parameters(fam, start, direction);
  traj.vertices.push_back(start);
  traj.directions.push_back(direction);
  traj.path.push_back(start);

  State st{start, direction};
  const double h = 0.01 * std::sqrt(a.back());
  double arc = 0;
  int skip_wall = -1;
  long step_count = 0;
  while (static_cast<int>(traj.bounces.size()) < num_bounces || boundaries.empty()) {
    if (arc >= max_arc_length) {
      if (boundaries.empty()) break;
      throw EscapeDetected("arc length budget exhausted before required bounces");
    }
    State prev = st;
    rk4_step(a, st, h);
    arc += h;
    ++step_count;
    if (step_count % 8 == 0) traj.path.push_back(st.x);

    if (skip_wall >= 0 && wall_excess(a, boundaries[skip_wall], st.x) < -1e-9)
      skip_wall = -1;

    int hit_wall = -1;
    for (size_t wi = 0; wi < boundaries.size(); ++wi) {
      if (static_cast<int>(wi) == skip_wall) continue;
      if (wall_excess(a, boundaries[wi], st.x) > 0) {
        hit_wall = static_cast<int>(wi);
        break;
      }
    }
    if (hit_wall < 0) {
      if (step_count % 512 == 0) {
        CausticSet c = caustic_parameters(fam, st.x, st.v);
        for (size_t i = 0; i < c.size(); ++i)
          traj.max_caustic_deviation =
              std::max(traj.max_caustic_deviation,
                       std::abs(c[i] - traj.caustics[i]) / (1 + std::abs(traj.caustics[i])));
      }
      continue;
    }

    // crossing happened inside the step: bisect the step fraction
    const Wall& w = boundaries[hit_wall];
    double lo = 0, hi = h;
    State at = st;
    for (int it = 0; it < 60; ++it) {
      double mid = (lo + hi) / 2;
      State trial = prev;
      rk4_step(a, trial, mid);
      if (wall_excess(a, w, trial.x) > 0) {
        hi = mid;
        at = trial;
      } else {
        lo = mid;
        at = trial;
        if (hi - lo < 1e-15) break;
      }
    }
    arc += (lo + hi) / 2 - h;

    std::vector<double> v_in = at.v;
    // reflect inside the tangent plane about the boundary curve
    std::vector<double> u = quadric_grad<double>(a, w.lambda, at.x);
    project_tangent(a, at.x, u);
    double un = norm(u);
    if (un < 1e-12) throw GrazingIncidence("boundary curve normal degenerate");
    for (auto& ui : u) ui /= un;
    double c = dot(at.v, u);
    if (std::abs(c) < 1e-10) throw GrazingIncidence();
    for (size_t i = 0; i < at.v.size(); ++i) at.v[i] -= 2 * c * u[i];
    project_tangent(a, at.x, at.v);
    normalize(at.v);

    BounceRecord rec;
    rec.vertex = at.x;
    rec.lambda = w.lambda;
    rec.coord_index = affected_coordinate(fam, w.lambda);
    rec.cls = (w.interior_sign > 0) ? BounceClass::inside : BounceClass::outside;
    traj.bounces.push_back(rec);
    traj.vertices.push_back(at.x);
    traj.directions.push_back(at.v);
    traj.path.push_back(at.x);

    CausticSet cs = caustic_parameters(fam, at.x, at.v);
    for (size_t i = 0; i < cs.size(); ++i)
      traj.max_caustic_deviation =
          std::max(traj.max_caustic_deviation,
                   std::abs(cs[i] - traj.caustics[i]) / (1 + std::abs(traj.caustics[i])));

    st = at;
    skip_wall = hit_wall;
  }
  if (boundaries.empty()) {
    traj.vertices.push_back(st.x);
    traj.directions.push_back(st.v);
    traj.path.push_back(st.x);
  }
  return traj;
}

}  // namespace poncelet
