#include "poncelet/search.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

namespace {

template <class T>
T pi_of() {
  using poncelet::atan2;
  return atan2(T(0), T(-1));
}

// Boundary parametrization angle of a point on Q_0, monotone along the ellipse.
template <class T>
T boundary_angle(const std::vector<T>& a, const std::vector<T>& p) {
  using poncelet::atan2;
  using poncelet::sqrt;
  return atan2(p[1] / sqrt(a[1]), p[0] / sqrt(a[0]));
}

template <class T>
struct D2Frame {
  std::vector<T> a, p0, tangent, inward;
  T s_center;  // direction parameter pointing through the center
};

template <class T>
D2Frame<T> d2_frame(const std::vector<T>& a, const T& theta0) {
  using poncelet::cos;
  using poncelet::sin;
  using poncelet::sqrt;
  D2Frame<T> f;
  f.a = a;
  f.p0 = {sqrt(a[0]) * cos(theta0), sqrt(a[1]) * sin(theta0)};
  f.tangent = {-sqrt(a[0]) * sin(theta0), sqrt(a[1]) * cos(theta0)};
  normalize(f.tangent);
  std::vector<T> g = quadric_grad(a, T(0), f.p0);
  normalize(g);
  f.inward = {-g[0], -g[1]};
  // remove the tangential leak of the normal (the frame need not be orthogonal,
  // only a positively oriented basis of inward directions)
  std::vector<T> c = {-f.p0[0], -f.p0[1]};
  normalize(c);
  f.s_center = atan2(dot(c, f.inward), dot(c, f.tangent));
  return f;
}

template <class T>
std::vector<T> d2_direction(const D2Frame<T>& f, const T& s) {
  using poncelet::cos;
  using poncelet::sin;
  return {cos(s) * f.tangent[0] + sin(s) * f.inward[0],
          cos(s) * f.tangent[1] + sin(s) * f.inward[1]};
}

// Total boundary-angle advance over `steps` bounces of a cyclic game minus
// 2*pi, counting only vertices on quadrics flagged in `count`.  Returns a
// large negative sentinel when the ray fails to reach a game quadric (the
// caustic is too small for the game to proceed).
template <class T>
T angle_defect(const D2Frame<T>& f, const std::vector<T>& betas,
               const std::vector<int>& sides, const std::vector<bool>& count,
               int steps, const T& s) {
  const T pi = pi_of<T>();
  std::vector<T> p = f.p0, v = d2_direction(f, s);
  T total(0), prev = boundary_angle(f.a, f.p0);
  try {
    for (int i = 0; i < steps; ++i) {
      size_t idx = i % betas.size();
      std::vector<T> hit = game_step(f.a, betas[idx], sides[idx], p, v, (int)idx);
      if (!count[idx]) continue;
      T th = boundary_angle(f.a, hit);
      T d = th - prev;
      while (d <= 0) d += 2 * pi;
      while (d > 2 * pi) d -= 2 * pi;
      total += d;
      prev = th;
    }
  } catch (const Error&) {
    return T(-100);
  }
  return total - 2 * pi;
}

// Bisect a genuine sign change of the defect.  `f_lo` is the value at `lo`;
// the orientation is inferred from it.
template <class T>
T bisect_defect_interval(const D2Frame<T>& f, const std::vector<T>& betas,
                         const std::vector<int>& sides, const std::vector<bool>& count,
                         int steps, T lo, T hi, T f_lo) {
  for (int it = 0; it < bisection_iterations<T>(); ++it) {
    T mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    T fm = angle_defect(f, betas, sides, count, steps, mid);
    if ((fm < 0) == (f_lo < 0))
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

// Scan (s_lo, s_hi) for adjacent finite defects of opposite sign and bisect
// the change.  Sentinel values from unreachable game quadrics are skipped.
template <class T>
T bisect_defect(const D2Frame<T>& f, const std::vector<T>& betas,
                const std::vector<int>& sides, const std::vector<bool>& count,
                int steps, T s_lo, T s_hi, int scan) {
  T prev_s = s_lo;
  T prev_f = angle_defect(f, betas, sides, count, steps, s_lo);
  for (int i = 1; i <= scan; ++i) {
    T s = s_lo + (s_hi - s_lo) * i / scan;
    T fs = angle_defect(f, betas, sides, count, steps, s);
    bool ok_prev = abs(prev_f) < 50, ok_cur = abs(fs) < 50;
    if (ok_prev && ok_cur && (prev_f < 0) != (fs < 0))
      return bisect_defect_interval(f, betas, sides, count, steps, prev_s, s, prev_f);
    prev_s = s;
    prev_f = fs;
  }
  throw SearchExhausted("no closure in the scanned direction range");
}

}  // namespace

D2Closure d2_find_caustic_for_period(const ConfocalFamily& fam, int period) {
  if (fam.dim() != 2) throw NonFiniteInput("d = 2 required");
  D2Frame<double> f = d2_frame<double>(fam.a, 0.37);
  std::vector<double> betas = {0.0};
  std::vector<int> sides = {1};
  std::vector<bool> count = {true};
  double s = bisect_defect(f, betas, sides, count, period, 1e-4, f.s_center - 1e-6, 400);

  D2Closure res;
  res.period = period;
  std::vector<double> v = d2_direction(f, s);
  res.caustic = caustic_parameters(fam, f.p0, v)[0];
  std::vector<double> p = f.p0, w = v;
  res.vertices.push_back(p);
  for (int i = 0; i < period; ++i)
    res.vertices.push_back(game_step(fam.a, 0.0, 1, p, w, 0));
  double e = 0;
  for (int i = 0; i < 2; ++i) e = std::max(e, std::abs(p[i] - f.p0[i]));
  res.vertex_error = e;
  return res;
}

std::vector<double> d2_direction_for_caustic(const ConfocalFamily& fam,
                                             const std::vector<double>& p, double alpha) {
  // same frame construction, centered at p
  D2Frame<double> f;
  f.a = fam.a;
  f.p0 = p;
  std::vector<double> g = quadric_grad(fam.a, 0.0, p);
  normalize(g);
  f.inward = {-g[0], -g[1]};
  f.tangent = {-f.inward[1], f.inward[0]};  // CCW for outward normal (x,y)>0... fixed below
  // orient the tangent counterclockwise: cross(p, t) > 0
  if (p[0] * f.tangent[1] - p[1] * f.tangent[0] < 0) {
    f.tangent[0] = -f.tangent[0];
    f.tangent[1] = -f.tangent[1];
  }
  std::vector<double> c = {-p[0], -p[1]};
  normalize(c);
  f.s_center = std::atan2(dot(c, f.inward), dot(c, f.tangent));

  double lo = 1e-6, hi = f.s_center - 1e-9;
  auto val = [&](double s) {
    return caustic_parameters(fam, p, d2_direction(f, s))[0] - alpha;
  };
  if (val(lo) > 0 || val(hi) < 0) throw SearchExhausted("caustic outside the swept range");
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    (val(mid) < 0 ? lo : hi) = mid;
  }
  return d2_direction(f, (lo + hi) / 2);
}

BigReal d2_ordered_game_caustic(const ConfocalFamily& fam,
                                const std::vector<double>& betas_d,
                                const std::vector<int>& sides, int steps,
                                unsigned precision_bits) {
  if (fam.dim() != 2) throw NonFiniteInput("d = 2 required");
  // double seed; the scan is restricted to directions whose caustic lies
  // strictly between the outermost game quadric and the degenerate value a_2
  D2Frame<double> fd = d2_frame<double>(fam.a, 0.37);
  std::vector<bool> count(betas_d.size(), true);
  double beta_max = *std::max_element(betas_d.begin(), betas_d.end());
  auto s_for_caustic = [&](double target) {
    double lo = 1e-6, hi = fd.s_center - 1e-9;
    auto val = [&](double s) {
      return caustic_parameters(fam, fd.p0, d2_direction(fd, s))[0] - target;
    };
    for (int it = 0; it < 200; ++it) {
      double mid = (lo + hi) / 2;
      (val(mid) < 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
  };
  double s_win_lo = s_for_caustic(beta_max * (1 + 1e-12) + 1e-12);
  double s_win_hi = s_for_caustic(fam.a[1] * (1 - 1e-12));
  double s_seed = bisect_defect(fd, betas_d, sides, count, steps, s_win_lo, s_win_hi, 400);

  PrecisionGuard guard(precision_bits + 64);
  std::vector<BigReal> a = {BigReal(fam.a[0]), BigReal(fam.a[1])};
  D2Frame<BigReal> f = d2_frame<BigReal>(a, BigReal(0.37));
  std::vector<BigReal> betas(betas_d.begin(), betas_d.end());
  BigReal lo = BigReal(s_seed) - BigReal(1e-8), hi = BigReal(s_seed) + BigReal(1e-8);
  BigReal flo = angle_defect(f, betas, sides, count, steps, lo);
  BigReal fhi = angle_defect(f, betas, sides, count, steps, hi);
  BigReal s;
  if (abs(flo) < 50 && abs(fhi) < 50 && (flo < 0) != (fhi < 0)) {
    s = bisect_defect_interval(f, betas, sides, count, steps, lo, hi, flo);
  } else {
    s = bisect_defect(f, betas, sides, count, steps, BigReal(s_win_lo),
                      BigReal(s_win_hi), 4000);
  }
  std::vector<BigReal> v = d2_direction(f, s);
  return caustic_parameters_t<BigReal>(a, f.p0, v)[0];
}

BigReal d2_game_caustic(const ConfocalFamily& fam, double gamma, int m,
                        unsigned precision_bits) {
  return d2_ordered_game_caustic(fam, {gamma, 0.0}, {-1, 1}, 2 * m, precision_bits);
}

namespace {

// d = 3 machinery: residual (x_k - x_0, v_k - v_0) of a cyclic game from a
// fixed start over the two direction-sphere parameters.

template <class T>
std::vector<T> sphere_dir(const T& psi1, const T& psi2) {
  using poncelet::cos;
  using poncelet::sin;
  return {sin(psi1) * cos(psi2), sin(psi1) * sin(psi2), cos(psi1)};
}

template <class T>
std::vector<T> surface_point(const std::vector<T>& a, const T& th, const T& ph) {
  using poncelet::cos;
  using poncelet::sin;
  using poncelet::sqrt;
  return {sqrt(a[0]) * sin(th) * cos(ph), sqrt(a[1]) * sin(th) * sin(ph),
          sqrt(a[2]) * cos(th)};
}

template <class T>
bool game_residual(const std::vector<T>& a, const std::vector<T>& betas,
                   const std::vector<int>& sides, int steps, const std::vector<T>& p0,
                   const T& psi1, const T& psi2, std::vector<T>& out) {
  std::vector<T> v = sphere_dir(psi1, psi2);
  // ensure the ray enters the domain
  std::vector<T> g = quadric_grad(a, T(0), p0);
  if (dot(v, g) > 0)
    for (auto& c : v) c = -c;
  std::vector<T> v0 = v, p = p0;
  try {
    for (int i = 0; i < steps; ++i) {
      size_t idx = i % betas.size();
      game_step(a, betas[idx], sides[idx], p, v, (int)idx);
    }
  } catch (const Error&) {
    return false;
  }
  out.resize(6);
  for (int i = 0; i < 3; ++i) {
    out[i] = p[i] - p0[i];
    out[3 + i] = v[i] - v0[i];
  }
  return true;
}

template <class T>
T residual_norm(const std::vector<T>& r) {
  T s(0);
  for (const T& x : r) s += x * x;
  using poncelet::sqrt;
  return sqrt(s);
}

// Gauss-Newton over (psi1, psi2); returns the final residual norm.
template <class T>
T gauss_newton(const std::vector<T>& a, const std::vector<T>& betas,
               const std::vector<int>& sides, int steps, const std::vector<T>& p0,
               T& psi1, T& psi2, const T& diff_step, int iters) {
  std::vector<T> r;
  if (!game_residual(a, betas, sides, steps, p0, psi1, psi2, r)) return T(1e30);
  T best = residual_norm(r);
  for (int it = 0; it < iters; ++it) {
    std::vector<T> rp1, rm1, rp2, rm2;
    if (!game_residual(a, betas, sides, steps, p0, T(psi1 + diff_step), psi2, rp1) ||
        !game_residual(a, betas, sides, steps, p0, T(psi1 - diff_step), psi2, rm1) ||
        !game_residual(a, betas, sides, steps, p0, psi1, T(psi2 + diff_step), rp2) ||
        !game_residual(a, betas, sides, steps, p0, psi1, T(psi2 - diff_step), rm2))
      break;
    // normal equations of the 6x2 Jacobian
    T j11(0), j12(0), j22(0), b1(0), b2(0);
    for (int i = 0; i < 6; ++i) {
      T J1 = (rp1[i] - rm1[i]) / (2 * diff_step);
      T J2 = (rp2[i] - rm2[i]) / (2 * diff_step);
      j11 += J1 * J1;
      j12 += J1 * J2;
      j22 += J2 * J2;
      b1 += J1 * r[i];
      b2 += J2 * r[i];
    }
    T det = j11 * j22 - j12 * j12;
    if (det == 0) break;
    T d1 = (j22 * b1 - j12 * b2) / det;
    T d2 = (j11 * b2 - j12 * b1) / det;
    T scale(1);
    bool improved = false;
    for (int half = 0; half < 20; ++half) {
      std::vector<T> rt;
      if (game_residual(a, betas, sides, steps, p0, T(psi1 - scale * d1),
                        T(psi2 - scale * d2), rt)) {
        T n = residual_norm(rt);
        if (n < best) {
          psi1 -= scale * d1;
          psi2 -= scale * d2;
          best = n;
          r = rt;
          improved = true;
          break;
        }
      }
      scale /= 2;
    }
    if (!improved) break;
  }
  return best;
}

bool orbit_is_degenerate(const ConfocalFamily& fam, const std::vector<double>& p0,
                         const std::vector<double>& v0, int steps,
                         const std::vector<double>& betas, const std::vector<int>& sides) {
  std::vector<double> p = p0, v = v0, mx(3, 0);
  double early = 1e30;
  try {
    for (int i = 0; i < steps; ++i) {
      size_t idx = i % betas.size();
      game_step(fam.a, betas[idx], sides[idx], p, v, (int)idx);
      for (int c = 0; c < 3; ++c) mx[c] = std::max(mx[c], std::abs(p[c]));
      if (i + 1 < steps && (i + 1) % betas.size() == 0) {
        double e = 0;
        for (int c = 0; c < 3; ++c) e = std::max(e, std::abs(p[c] - p0[c]));
        early = std::min(early, e);
      }
    }
  } catch (const Error&) {
    return true;
  }
  for (int c = 0; c < 3; ++c)
    if (mx[c] < 1e-4) return true;  // planar orbit
  if (early < 1e-3) return true;    // shorter true period
  CausticSet cs = caustic_parameters(fam, p0, v0);
  for (double al : cs) {
    for (double ax : fam.a)
      if (std::abs(al - ax) < 1e-6) return true;
    if (std::abs(al) < 1e-9) return true;
  }
  if (std::abs(cs[0] - cs[1]) < 1e-6) return true;
  return false;
}

}  // namespace

std::optional<D3Closure> d3_find_closed_orbit(const ConfocalFamily& fam,
                                              const std::vector<int>& periods,
                                              int grid, double defect_tol) {
  if (fam.dim() != 3) throw NonFiniteInput("d = 3 required");
  const double pi = pi_of<double>();
  std::vector<double> p0 = surface_point<double>(fam.a, 1.1, 0.7);
  std::vector<double> betas = {0.0};
  std::vector<int> sides = {1};

  for (int k : periods) {
    // coarse scan, then refine the most promising cells
    std::vector<std::pair<double, std::pair<double, double>>> cells;
    for (int i = 1; i < grid; ++i)
      for (int j = 0; j < 2 * grid; ++j) {
        double psi1 = pi * i / grid, psi2 = pi * j / grid;
        std::vector<double> r;
        if (!game_residual<double>(fam.a, betas, sides, k, p0, psi1, psi2, r)) continue;
        cells.push_back({residual_norm(r), {psi1, psi2}});
      }
    std::sort(cells.begin(), cells.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    size_t tries = std::min<size_t>(cells.size(), 40);
    for (size_t c = 0; c < tries; ++c) {
      double psi1 = cells[c].second.first, psi2 = cells[c].second.second;
      double res = gauss_newton<double>(fam.a, betas, sides, k, p0, psi1, psi2, 1e-7, 60);
      if (res > defect_tol) continue;
      std::vector<double> v = sphere_dir(psi1, psi2);
      std::vector<double> g = quadric_grad(fam.a, 0.0, p0);
      if (dot(v, g) > 0)
        for (auto& x : v) x = -x;
      if (orbit_is_degenerate(fam, p0, v, k, betas, sides)) continue;
      D3Closure out;
      out.start = p0;
      out.direction = v;
      out.period = k;
      out.defect = res;
      out.caustics = caustic_parameters(fam, p0, v);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<D3GameClosure> d3_find_game_closure(const ConfocalFamily& fam, double gamma,
                                                  int m, int grid,
                                                  unsigned precision_bits) {
  if (fam.dim() != 3) throw NonFiniteInput("d = 3 required");
  const double pi = pi_of<double>();
  std::vector<double> p0 = surface_point<double>(fam.a, 1.1, 0.7);
  std::vector<double> betas = {gamma, 0.0};
  std::vector<int> sides = {-1, 1};
  const int steps = 2 * m;

  std::vector<std::pair<double, std::pair<double, double>>> cells;
  for (int i = 1; i < grid; ++i)
    for (int j = 0; j < 2 * grid; ++j) {
      double psi1 = pi * i / grid, psi2 = pi * j / grid;
      std::vector<double> r;
      if (!game_residual<double>(fam.a, betas, sides, steps, p0, psi1, psi2, r)) continue;
      cells.push_back({residual_norm(r), {psi1, psi2}});
    }
  std::sort(cells.begin(), cells.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  size_t tries = std::min<size_t>(cells.size(), 200);
  for (size_t c = 0; c < tries; ++c) {
    double psi1 = cells[c].second.first, psi2 = cells[c].second.second;
    double res = gauss_newton<double>(fam.a, betas, sides, steps, p0, psi1, psi2, 1e-7, 60);
    if (res > 1e-8) continue;
    std::vector<double> v = sphere_dir(psi1, psi2);
    std::vector<double> g = quadric_grad(fam.a, 0.0, p0);
    if (dot(v, g) > 0)
      for (auto& x : v) x = -x;
    if (orbit_is_degenerate(fam, p0, v, steps, betas, sides)) continue;

    // high-precision polish of the direction parameters
    PrecisionGuard guard(precision_bits);
    std::vector<BigReal> a_hp, betas_hp = {BigReal(gamma), BigReal(0)};
    for (double x : fam.a) a_hp.push_back(BigReal(x));
    std::vector<BigReal> p0_hp = surface_point<BigReal>(a_hp, BigReal(1.1), BigReal(0.7));
    BigReal P1(psi1), P2(psi2);
    BigReal step = pow2(-static_cast<long>(precision_bits) / 3);
    BigReal res_hp = gauss_newton<BigReal>(a_hp, betas_hp, sides, steps, p0_hp, P1, P2,
                                           step, 40);
    std::vector<BigReal> v_hp = sphere_dir(P1, P2);
    std::vector<BigReal> g_hp = quadric_grad(a_hp, BigReal(0), p0_hp);
    if (dot(v_hp, g_hp) > 0)
      for (auto& x : v_hp) x = -x;

    D3GameClosure out;
    out.start = p0;
    out.direction = v;
    out.m = m;
    out.defect = res;
    out.start_hp = p0_hp;
    out.direction_hp = v_hp;
    out.caustics_hp = caustic_parameters_t<BigReal>(a_hp, p0_hp, v_hp);
    out.defect_hp = static_cast<double>(res_hp);
    return out;
  }
  return std::nullopt;
}

}  // namespace poncelet
