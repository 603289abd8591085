#include "poncelet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poncelet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_scale(const std::vector<double>& p) {
  double s = 1;
  for (double v : p) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

int affected_coordinate(const ConfocalFamily& fam, double lambda) {
  const int d = fam.dim();
  for (int s = 1; s <= d; ++s) {
    double hi = fam.a[s - 1];
    double lo = (s == d) ? -kInf : fam.a[s];
    if (lambda == hi || lambda == lo)
      throw InflectionAmbiguous("quadric parameter equals a semi-axis");
    if (lambda > lo && lambda < hi) return s;
  }
  throw InflectionAmbiguous("quadric parameter above a_1");
}

std::vector<std::pair<double, double>> Domain::lambda_bounds() const {
  const int d = family.dim();
  std::vector<std::pair<double, double>> b(d);
  for (int s = 1; s <= d; ++s) {
    b[s - 1].first = (s == d) ? -kInf : family.a[s];
    b[s - 1].second = family.a[s - 1];
  }
  for (const Wall& w : walls) {
    int s = affected_coordinate(family, w.lambda);
    if (w.interior_sign > 0)
      b[s - 1].first = std::max(b[s - 1].first, w.lambda);
    else
      b[s - 1].second = std::min(b[s - 1].second, w.lambda);
  }
  return b;
}

std::vector<double> reflect(const ConfocalFamily& fam, double boundary_lambda,
                            const std::vector<double>& point,
                            const std::vector<double>& incoming) {
  return reflect_t<double>(fam.a, boundary_lambda, point, incoming);
}

SegmentHit trace_segment(const Domain& dom, const std::vector<double>& point,
                         const std::vector<double>& direction) {
  const auto& a = dom.family.a;
  const double t_min = 1e-9 * point_scale(point);
  const double slack = 1e-9;

  double best_t = kInf;
  double second_t = kInf;
  const Wall* best_wall = nullptr;
  const Wall* second_wall = nullptr;
  for (const Wall& w : dom.walls) {
    for (double t : ray_quadric_roots<double>(a, w.lambda, point, direction)) {
      if (t <= t_min) continue;
      std::vector<double> hit(point.size());
      for (size_t i = 0; i < hit.size(); ++i) hit[i] = point[i] + t * direction[i];
      bool valid = true;
      for (const Wall& o : dom.walls) {
        if (&o == &w) continue;
        if (o.interior_sign * quadric_eval<double>(a, o.lambda, hit) > slack) {
          valid = false;
          break;
        }
      }
      if (!valid) continue;
      if (t < best_t) {
        second_t = best_t;
        second_wall = best_wall;
        best_t = t;
        best_wall = &w;
      } else if (t < second_t) {
        second_t = t;
        second_wall = &w;
      }
    }
  }
  if (!best_wall) throw EscapeDetected("no wall intersection along the ray");
  if (second_wall && second_wall != best_wall && second_t - best_t < 1e-12 * point_scale(point))
    throw CornerHit();

  SegmentHit hit;
  hit.point.resize(point.size());
  for (size_t i = 0; i < point.size(); ++i) hit.point[i] = point[i] + best_t * direction[i];
  hit.lambda = best_wall->lambda;
  hit.coord_index = affected_coordinate(dom.family, best_wall->lambda);
  return hit;
}

BounceClass classify_reflection(const EllipticCoords& before, const EllipticCoords& at,
                                const EllipticCoords& after, int s) {
  double lb = before[s - 1], la = at[s - 1], lf = after[s - 1];
  double tol = 1e-12 * (1 + std::abs(la));
  if (lb < la - tol && lf < la - tol) return BounceClass::outside;
  if (lb > la + tol && lf > la + tol) return BounceClass::inside;
  throw InflectionAmbiguous("no strict extremum of the elliptic coordinate");
}

namespace {

BounceClass classify_at_hit(const ConfocalFamily& fam, const std::vector<double>& hit,
                            const std::vector<double>& v_in, const std::vector<double>& v_out,
                            double wall_lambda, int s) {
  double eps = 1e-6 * point_scale(hit);
  std::vector<double> pb(hit.size()), pf(hit.size());
  for (size_t i = 0; i < hit.size(); ++i) {
    pb[i] = hit[i] - eps * v_in[i];
    pf[i] = hit[i] + eps * v_out[i];
  }
  EllipticCoords before = elliptic_coordinates(fam, pb);
  EllipticCoords after = elliptic_coordinates(fam, pf);
  EllipticCoords at = before;  // only coordinate s is read; pin it to the wall value
  at[s - 1] = wall_lambda;
  return classify_reflection(before, at, after, s);
}

void update_caustic_deviation(Trajectory& traj, const ConfocalFamily& fam,
                              const std::vector<double>& p, const std::vector<double>& v) {
  CausticSet c = caustic_parameters(fam, p, v);
  for (size_t i = 0; i < c.size(); ++i) {
    double dev = std::abs(c[i] - traj.caustics[i]) / (1 + std::abs(traj.caustics[i]));
    traj.max_caustic_deviation = std::max(traj.max_caustic_deviation, dev);
  }
}

}  // namespace

Trajectory simulate(const Domain& dom, std::vector<double> start,
                    std::vector<double> direction, int num_bounces) {
  normalize(direction);
  Trajectory traj;
  traj.caustics = caustic_parameters(dom.family, start, direction);
  traj.vertices.push_back(start);

  std::vector<double> p = start, v = direction;
  int grazes = 0;
  while (static_cast<int>(traj.bounces.size()) < num_bounces) {
    SegmentHit hit = trace_segment(dom, p, v);
    std::vector<double> v_out;
    try {
      v_out = reflect(dom.family, hit.lambda, hit.point, v);
    } catch (const GrazingIncidence&) {
      // tangential contact: the wall acts as a caustic there, pass through
      if (++grazes > 64) throw EscapeDetected("persistent grazing contact");
      p = hit.point;
      continue;
    }
    normalize(v_out);

    BounceRecord rec;
    rec.vertex = hit.point;
    rec.lambda = hit.lambda;
    rec.coord_index = hit.coord_index;
    rec.cls = classify_at_hit(dom.family, hit.point, v, v_out, hit.lambda, hit.coord_index);
    traj.directions.push_back(v);
    traj.vertices.push_back(hit.point);
    traj.bounces.push_back(rec);
    p = hit.point;
    v = v_out;
    update_caustic_deviation(traj, dom.family, p, v);
  }
  traj.directions.push_back(v);
  return traj;
}

std::vector<std::pair<double, double>> lambda_ranges(const Domain& dom,
                                                     const AdmissiblePolynomial& poly) {
  auto bounds = dom.lambda_bounds();
  std::vector<std::pair<double, double>> out(bounds.size());
  for (size_t s = 0; s < bounds.size(); ++s) {
    double lo = bounds[s].first, hi = bounds[s].second;
    std::vector<double> pts;
    pts.push_back(lo);
    for (double r : poly.roots)
      if (r > lo && r < hi) pts.push_back(r);
    pts.push_back(hi);
    double bw = -1, blo = 0, bhi = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      double a = pts[i], b = pts[i + 1];
      double mid = std::isinf(a) ? b - 1 : (a + b) / 2;
      if (poly.poly(mid) >= 0) {
        if (std::isinf(a))
          throw EmptyRange("admissible lambda range unbounded below");
        if (b - a > bw) {
          bw = b - a;
          blo = a;
          bhi = b;
        }
      }
    }
    if (bw < 0) throw EmptyRange("caustics incompatible with the domain");
    out[s] = {blo, bhi};
  }
  return out;
}

namespace {

// lambda_s sampled along one period of the trajectory, cyclic.
std::vector<double> sample_lambda(const ConfocalFamily& fam, const Trajectory& traj,
                                  int s, int period, int per_segment) {
  std::vector<double> series;
  for (int j = 0; j < period; ++j) {
    const auto& A = traj.vertices[j];
    const auto& B = traj.vertices[j + 1];
    for (int k = 0; k < per_segment; ++k) {
      double f = static_cast<double>(k) / per_segment;
      std::vector<double> p(A.size());
      for (size_t i = 0; i < p.size(); ++i) p[i] = A[i] * (1 - f) + B[i] * f;
      series.push_back(elliptic_coordinates(fam, p)[s - 1]);
    }
  }
  return series;
}

// Balanced count of lambda minima near glo / maxima near ghi over one cyclic
// sampling.  Throws UnbalancedCounts on mismatch.
int count_extrema(const std::vector<double>& lam, double glo, double ghi, int s) {
  const int n = static_cast<int>(lam.size());
  double match_tol = std::max(1e-5, 0.02 * (ghi - glo));
  int mins = 0, maxs = 0;
  for (int i = 0; i < n; ++i) {
    double prev = lam[(i + n - 1) % n], cur = lam[i], next = lam[(i + 1) % n];
    if (cur <= prev && cur < next && cur <= glo + match_tol) ++mins;
    if (cur >= prev && cur > next && cur >= ghi - match_tol) ++maxs;
  }
  if (mins != maxs)
    throw UnbalancedCounts("lambda_" + std::to_string(s) + " extremum counts " +
                           std::to_string(mins) + " vs " + std::to_string(maxs));
  return mins;
}

}  // namespace

WindingCounts winding_counts(const ConfocalFamily& fam, const Trajectory& traj,
                             const std::vector<std::pair<double, double>>& ranges,
                             int period) {
  const int d = fam.dim();
  WindingCounts wc;
  wc.n.assign(d, 0);
  for (int s = 1; s <= d; ++s) {
    std::vector<double> lam = sample_lambda(fam, traj, s, period, 64);
    wc.n[s - 1] = count_extrema(lam, ranges[s - 1].first, ranges[s - 1].second, s);
  }
  return wc;
}

WindingCounts winding_counts_from_path(const ConfocalFamily& fam,
                                       const std::vector<std::vector<double>>& path,
                                       const std::vector<std::pair<double, double>>& ranges) {
  const int d = fam.dim();
  std::vector<std::vector<double>> lam(d);
  for (const auto& p : path) {
    EllipticCoords ec = elliptic_coordinates(fam, p);
    for (int s = 0; s < d; ++s) lam[s].push_back(ec[s]);
  }
  WindingCounts wc;
  wc.n.assign(d, 0);
  for (int s = 1; s <= d; ++s)
    wc.n[s - 1] = count_extrema(lam[s - 1], ranges[s - 1].first, ranges[s - 1].second, s);
  return wc;
}

std::optional<int> detect_period(const Trajectory& traj, double tol_pos, double tol_dir) {
  const int nseg = static_cast<int>(traj.directions.size());
  for (int k = 1; k < static_cast<int>(traj.vertices.size()) && k <= nseg - 1; ++k) {
    double dp = 0, dv = 0;
    for (size_t i = 0; i < traj.vertices[0].size(); ++i) {
      dp = std::max(dp, std::abs(traj.vertices[k][i] - traj.vertices[0][i]));
      dv = std::max(dv, std::abs(traj.directions[k][i] - traj.directions[0][i]));
    }
    if (dp < tol_pos && dv < tol_dir) return k;
  }
  return std::nullopt;
}

bool validate_signature(const std::vector<double>& betas, const Signature& sig) {
  const int k = static_cast<int>(sig.i.size());
  if (k == 0 || betas.size() != sig.i.size()) return false;
  for (int s = 0; s < k; ++s) {
    if (sig.i[s] != 1 && sig.i[s] != -1) return false;
    if (sig.i[s] == -1) {
      int prev = (s + k - 1) % k, next = (s + 1) % k;
      if (k == 1) return false;  // a lone outside bounce cannot stay bounded
      if (sig.i[prev] != 1 || sig.i[next] != 1) return false;
      if (!(betas[prev] < betas[s] && betas[next] < betas[s])) return false;
    }
  }
  return true;
}

Trajectory play_ordered_game(const ConfocalFamily& fam, const std::vector<double>& betas,
                             const Signature& sig, std::vector<double> start,
                             std::vector<double> direction, int rounds) {
  if (!validate_signature(betas, sig))
    throw OrderViolation("invalid billiard ordered game signature");
  for (double b : betas)
    if (b >= fam.a.back())
      throw OrderViolation("game quadrics must be ellipsoids (beta < a_d)");
  normalize(direction);

  Trajectory traj;
  traj.caustics = caustic_parameters(fam, start, direction);
  traj.vertices.push_back(start);
  std::vector<double> p = start, v = direction;
  const int k = static_cast<int>(betas.size());
  for (int step = 0; step < rounds * k; ++step) {
    int s = step % k;
    std::vector<double> v_in = v;
    std::vector<double> hit = game_step<double>(fam.a, betas[s], sig.i[s], p, v, s);
    BounceRecord rec;
    rec.vertex = hit;
    rec.lambda = betas[s];
    rec.coord_index = affected_coordinate(fam, betas[s]);
    rec.cls = classify_at_hit(fam, hit, v_in, v, betas[s], rec.coord_index);
    traj.directions.push_back(v_in);
    traj.vertices.push_back(hit);
    traj.bounces.push_back(rec);
    update_caustic_deviation(traj, fam, p, v);
  }
  traj.directions.push_back(v);
  return traj;
}

}  // namespace poncelet
