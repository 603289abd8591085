#include "poncelet/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "poncelet/search.hpp"

namespace poncelet {

using nlohmann::json;

namespace {

double as_number(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      size_t used = 0;
      double d = std::stod(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return d;
    } catch (...) {
    }
  }
  throw SchemaError(what + " must be a number or a decimal string");
}

std::vector<double> as_number_array(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty())
    throw SchemaError(what + " must be a nonempty array");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(as_number(v[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

void check_signature(const std::vector<double>& betas, const Signature& sig) {
  const int k = static_cast<int>(sig.i.size());
  if (k == 0 || betas.size() != sig.i.size())
    throw SchemaError("game.signature length must match game.betas");
  for (int s = 0; s < k; ++s)
    if (sig.i[s] != 1 && sig.i[s] != -1)
      throw SchemaError("game.signature[" + std::to_string(s) + "] must be +1 or -1");
  for (int s = 0; s < k; ++s) {
    if (sig.i[s] != -1) continue;
    int prev = (s + k - 1) % k, next = (s + 1) % k;
    if (k == 1 || sig.i[prev] != 1 || sig.i[next] != 1 ||
        !(betas[prev] < betas[s] && betas[next] < betas[s]))
      throw SchemaError("game.signature[" + std::to_string(s) +
                        "]: outside bounce needs inside neighbours on smaller quadrics");
  }
}

}  // namespace

Scene parse_scene(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("scene must be a JSON object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kFormatVersion)
    throw SchemaError("scene.format_version must be " + std::to_string(kFormatVersion));

  Scene sc;
  if (!doc.contains("family") || !doc["family"].is_object() ||
      !doc["family"].contains("semi_axes"))
    throw SchemaError("scene.family.semi_axes is required");
  sc.semi_axes = as_number_array(doc["family"]["semi_axes"], "family.semi_axes");
  if (sc.semi_axes.size() < 2) throw SchemaError("family.semi_axes needs d >= 2 entries");
  for (size_t i = 0; i < sc.semi_axes.size(); ++i) {
    if (!(sc.semi_axes[i] > 0))
      throw SchemaError("family.semi_axes[" + std::to_string(i) + "] must be positive");
    if (i > 0 && !(sc.semi_axes[i] < sc.semi_axes[i - 1]))
      throw SchemaError("family.semi_axes must be strictly decreasing");
  }

  const bool has_walls = doc.contains("walls");
  const bool has_game = doc.contains("game");
  if (has_walls == has_game)
    throw SchemaError("scene needs exactly one of walls / game");

  if (has_walls) {
    if (!doc["walls"].is_array() || doc["walls"].empty())
      throw SchemaError("scene.walls must be a nonempty array");
    for (size_t i = 0; i < doc["walls"].size(); ++i) {
      const json& w = doc["walls"][i];
      std::string where = "walls[" + std::to_string(i) + "]";
      if (!w.is_object() || !w.contains("lambda") || !w.contains("side"))
        throw SchemaError(where + " needs lambda and side");
      Wall wall;
      wall.lambda = as_number(w["lambda"], where + ".lambda");
      std::string side = w["side"].is_string() ? w["side"].get<std::string>() : "";
      if (side == "inside")
        wall.interior_sign = 1;
      else if (side == "outside")
        wall.interior_sign = -1;
      else
        throw SchemaError(where + ".side must be \"inside\" or \"outside\"");
      sc.walls.push_back(wall);
    }
  } else {
    const json& g = doc["game"];
    if (!g.is_object() || !g.contains("betas") || !g.contains("signature"))
      throw SchemaError("scene.game needs betas and signature");
    sc.game_betas = as_number_array(g["betas"], "game.betas");
    if (!g["signature"].is_array())
      throw SchemaError("game.signature must be an array");
    for (const auto& v : g["signature"]) {
      if (!v.is_number_integer())
        throw SchemaError("game.signature entries must be integers");
      sc.game_signature.i.push_back(v.get<int>());
    }
    check_signature(sc.game_betas, sc.game_signature);
  }

  if (doc.contains("constrained")) {
    if (!doc["constrained"].is_boolean())
      throw SchemaError("scene.constrained must be a boolean");
    sc.constrained = doc["constrained"].get<bool>();
    if (sc.constrained && (sc.semi_axes.size() != 3 || !has_walls))
      throw SchemaError("constrained scenes need d = 3 and walls");
  }

  if (doc.contains("start") && !(doc["start"].is_string() &&
                                 doc["start"].get<std::string>() == "auto")) {
    const json& st = doc["start"];
    if (!st.is_object() || !st.contains("point") || !st.contains("direction"))
      throw SchemaError("scene.start must be \"auto\" or {point, direction}");
    sc.start_point = as_number_array(st["point"], "start.point");
    sc.start_direction = as_number_array(st["direction"], "start.direction");
    if (sc.start_point.size() != sc.semi_axes.size() ||
        sc.start_direction.size() != sc.semi_axes.size())
      throw SchemaError("start.point / start.direction dimension mismatch");
    sc.start_auto = false;
  }

  if (doc.contains("caustics"))
    sc.caustics = as_number_array(doc["caustics"], "caustics");

  if (doc.contains("precision_bits")) {
    if (!doc["precision_bits"].is_number_integer() ||
        doc["precision_bits"].get<long>() < 24 ||
        doc["precision_bits"].get<long>() > 65536)
      throw SchemaError("precision_bits must be an integer in [24, 65536]");
    sc.precision_bits = doc["precision_bits"].get<unsigned>();
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw SchemaError("tolerances must be an object");
    if (t.contains("position")) sc.tolerance_position = as_number(t["position"], "tolerances.position");
    if (t.contains("residual")) sc.tolerance_residual = as_number(t["residual"], "tolerances.residual");
  }
  return sc;
}

Scene load_scene(const std::string& path) { return parse_scene(read_text_file(path)); }

std::string scene_to_json(const Scene& sc) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["family"]["semi_axes"] = sc.semi_axes;
  if (sc.is_game()) {
    doc["game"]["betas"] = sc.game_betas;
    doc["game"]["signature"] = sc.game_signature.i;
  } else {
    json walls = json::array();
    for (const Wall& w : sc.walls)
      walls.push_back({{"lambda", w.lambda},
                       {"side", w.interior_sign > 0 ? "inside" : "outside"}});
    doc["walls"] = walls;
  }
  if (sc.constrained) doc["constrained"] = true;
  if (sc.start_auto)
    doc["start"] = "auto";
  else
    doc["start"] = {{"point", sc.start_point}, {"direction", sc.start_direction}};
  if (!sc.caustics.empty()) doc["caustics"] = sc.caustics;
  doc["precision_bits"] = sc.precision_bits;
  doc["tolerances"] = {{"position", sc.tolerance_position},
                       {"residual", sc.tolerance_residual}};
  return doc.dump(1);
}

namespace {

// direction in the tangent plane at p on the ellipsoid, rotated by angle t
// within an orthonormal tangent frame
std::vector<double> tangent_direction(const std::vector<double>& a,
                                      const std::vector<double>& p, double t) {
  std::vector<double> n(p.size());
  for (size_t i = 0; i < p.size(); ++i) n[i] = p[i] / a[i];
  normalize(n);
  std::vector<double> e1(p.size(), 0);
  e1[std::abs(n[0]) < 0.9 ? 0 : 1] = 1;
  double c = dot(e1, n);
  for (size_t i = 0; i < e1.size(); ++i) e1[i] -= c * n[i];
  normalize(e1);
  std::vector<double> e2(p.size(), 0);
  if (p.size() == 3) {
    e2[0] = n[1] * e1[2] - n[2] * e1[1];
    e2[1] = n[2] * e1[0] - n[0] * e1[2];
    e2[2] = n[0] * e1[1] - n[1] * e1[0];
  }
  std::vector<double> v(p.size());
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = std::cos(t) * e1[i] + (p.size() == 3 ? std::sin(t) * e2[i] : 0);
  return v;
}

}  // namespace

void resolve_start(Scene& sc) {
  if (!sc.start_auto) return;
  ConfocalFamily fam = sc.family();
  const size_t d = sc.semi_axes.size();

  if (sc.is_game()) {
    // a point near the center is inside every game quadric
    sc.start_point.assign(d, 0);
    for (size_t i = 0; i < d; ++i)
      sc.start_point[i] = 0.05 * std::sqrt(sc.semi_axes[i]) * (i % 2 ? -1 : 1);
    sc.start_direction.assign(d, 0);
    for (size_t i = 0; i < d; ++i) sc.start_direction[i] = std::cos(0.7 + 1.3 * i);
    normalize(sc.start_direction);
    return;
  }

  if (sc.constrained) {
    // point on the ellipsoid strictly inside all boundary curves
    std::vector<double> best;
    for (int iu = 1; iu < 40 && best.empty(); ++iu)
      for (int iv = 0; iv < 80; ++iv) {
        double u = iu * M_PI / 40, v = iv * M_PI / 40;
        std::vector<double> p = {std::sqrt(sc.semi_axes[0]) * std::sin(u) * std::cos(v),
                                 std::sqrt(sc.semi_axes[1]) * std::sin(u) * std::sin(v),
                                 std::sqrt(sc.semi_axes[2]) * std::cos(u)};
        bool ok = true;
        for (const Wall& w : sc.walls)
          ok = ok && w.interior_sign * quadric_eval<double>(sc.semi_axes, w.lambda, p) < -1e-6;
        if (ok) {
          best = p;
          break;
        }
      }
    if (best.empty()) throw SchemaError("no ellipsoid point inside the constrained domain");
    sc.start_point = best;
    if (!sc.caustics.empty()) {
      // rotate the tangent direction until the line's second tangency
      // parameter matches the requested caustic
      double target = sc.caustics[0];
      double lo = 0.02, hi = M_PI / 2;
      auto second_caustic = [&](double t) {
        CausticSet cs = caustic_parameters(fam, best, tangent_direction(sc.semi_axes, best, t));
        // one parameter is ~0 (tangency to the ellipsoid itself)
        return std::abs(cs[0]) > std::abs(cs[1]) ? cs[0] : cs[1];
      };
      double flo = second_caustic(lo) - target, fhi = second_caustic(hi) - target;
      if (flo * fhi > 0) {
        sc.start_direction = tangent_direction(sc.semi_axes, best, 0.9);
      } else {
        for (int it = 0; it < 200; ++it) {
          double mid = (lo + hi) / 2;
          if ((second_caustic(mid) - target) * flo <= 0)
            hi = mid;
          else {
            lo = mid;
            flo = second_caustic(lo) - target;
          }
        }
        sc.start_direction = tangent_direction(sc.semi_axes, best, (lo + hi) / 2);
      }
    } else {
      sc.start_direction = tangent_direction(sc.semi_axes, best, 0.9);
    }
    return;
  }

  // plain billiard: start on the first wall, heading inward
  const Wall& w = sc.walls.front();
  sc.start_point.assign(d, 0);
  double c1 = std::cos(0.4), c2 = std::sin(0.4);
  sc.start_point[0] = std::sqrt(sc.semi_axes[0] - w.lambda) * c1;
  sc.start_point[1] = std::sqrt(sc.semi_axes[1] - w.lambda) * c2;

  if (d == 2 && !sc.caustics.empty() && w.lambda == 0) {
    sc.start_direction = d2_direction_for_caustic(fam, sc.start_point, sc.caustics[0]);
    return;
  }
  std::vector<double> inward(d);
  for (size_t i = 0; i < d; ++i) inward[i] = -sc.start_point[i];
  std::vector<double> tang = tangent_direction(sc.semi_axes, sc.start_point, 0.0);
  sc.start_direction.assign(d, 0);
  for (size_t i = 0; i < d; ++i) sc.start_direction[i] = inward[i] + 0.4 * tang[i];
  normalize(sc.start_direction);
}

std::string trajectory_to_json(const Scene& sc, const Trajectory& traj) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["family"]["semi_axes"] = sc.semi_axes;
  json walls = json::array();
  for (const Wall& w : sc.walls)
    walls.push_back({{"lambda", w.lambda},
                     {"side", w.interior_sign > 0 ? "inside" : "outside"}});
  for (size_t s = 0; s < sc.game_betas.size(); ++s)
    walls.push_back({{"lambda", sc.game_betas[s]},
                     {"side", sc.game_signature.i[s] > 0 ? "inside" : "outside"}});
  doc["walls"] = walls;
  doc["constrained"] = sc.constrained;
  doc["vertices"] = traj.vertices;
  doc["directions"] = traj.directions;
  json bounces = json::array();
  for (const BounceRecord& b : traj.bounces)
    bounces.push_back({{"lambda", b.lambda},
                       {"class", b.cls == BounceClass::inside ? "inside" : "outside"},
                       {"coord_index", b.coord_index}});
  doc["bounces"] = bounces;
  doc["caustics"] = traj.caustics;
  doc["max_caustic_deviation"] = traj.max_caustic_deviation;
  if (!traj.path.empty()) doc["path"] = traj.path;
  return doc.dump(1);
}

std::string format_real(const BigReal& v, unsigned bits) {
  if (v == 0) return "0";
  return v.str(bits_to_digits10(bits), std::ios_base::scientific);
}

std::string condition_report_to_json(const ConditionReport& rep) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["condition"] = rep.condition;
  doc["decision"] = decision_name(rep.decision);
  doc["residual"] = rep.residual;
  doc["certified"] = rep.certified;
  doc["precision_bits"] = rep.precision_bits;
  if (rep.rank >= 0) doc["rank"] = rep.rank;
  doc["matrix"]["rows"] = rep.matrix.rows;
  doc["matrix"]["cols"] = rep.matrix.cols;
  json entries = json::array();
  for (const BigReal& v : rep.matrix.data)
    entries.push_back(rep.precision_bits > 53
                          ? json(format_real(v, rep.precision_bits))
                          : json(static_cast<double>(v)));
  doc["matrix"]["entries"] = entries;
  return doc.dump(1);
}

std::string check_report_to_json(const CheckReport& rep) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["accepted"] = rep.accepted;
  doc["coefficients"] = rep.coeffs;
  doc["residual"] = rep.residual;
  doc["threshold"] = rep.threshold;
  doc["notes"] = rep.notes;
  return doc.dump(1);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SchemaError("cannot write " + path);
  out << content;
}

std::string content_digest(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace poncelet
