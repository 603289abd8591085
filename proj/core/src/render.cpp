#include "poncelet/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "poncelet/errors.hpp"

namespace poncelet {

using nlohmann::json;

namespace {

struct Proj {
  int u = 0, v = 1;
};

Proj projection_axes(const std::string& name, size_t dim) {
  if (dim == 2) return {0, 1};
  if (name == "xy") return {0, 1};
  if (name == "xz") return {0, 2};
  if (name == "yz") return {1, 2};
  throw SchemaError("projection must be xy, xz or yz");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ellipse outline of Q_lambda in the projection plane; skipped when the
// projected section is not an ellipse
void emit_ellipse(std::ostringstream& out, const std::vector<double>& a, double lambda,
                  const Proj& pr, double scale, double half, const char* stroke,
                  const char* dash) {
  double ru2 = a[pr.u] - lambda, rv2 = a[pr.v] - lambda;
  if (ru2 <= 0 || rv2 <= 0) return;
  out << "  <ellipse cx=\"" << fmt(half) << "\" cy=\"" << fmt(half) << "\" rx=\""
      << fmt(std::sqrt(ru2) * scale) << "\" ry=\"" << fmt(std::sqrt(rv2) * scale)
      << "\" fill=\"none\" stroke=\"" << stroke << "\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_trajectory_svg(const std::string& trajectory_json,
                                  const std::string& projection) {
  json doc;
  try {
    doc = json::parse(trajectory_json);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("trajectory is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("family") || !doc.contains("vertices"))
    throw SchemaError("trajectory document needs family and vertices");
  std::vector<double> a = doc["family"]["semi_axes"].get<std::vector<double>>();
  Proj pr = projection_axes(projection, a.size());

  const double half = 260, margin = 20;
  double extent = std::sqrt(a[0]);
  double scale = (half - margin) / extent;
  auto px = [&](double x) { return half + scale * x; };
  auto py = [&](double y) { return half - scale * y; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"520\" "
         "height=\"520\" viewBox=\"0 0 520 520\">\n";
  out << "  <rect width=\"520\" height=\"520\" fill=\"white\"/>\n";

  if (a.size() == 3) emit_ellipse(out, a, 0.0, pr, scale, half, "#888888", nullptr);
  if (doc.contains("walls"))
    for (const auto& w : doc["walls"])
      emit_ellipse(out, a, w["lambda"].get<double>(), pr, scale, half, "#000000", nullptr);
  if (doc.contains("caustics"))
    for (const auto& c : doc["caustics"])
      emit_ellipse(out, a, c.get<double>(), pr, scale, half, "#c04040", "4 3");

  const json& pts = (doc.contains("path") && !doc["path"].empty()) ? doc["path"]
                                                                   : doc["vertices"];
  if (pts.size() >= 2) {
    out << "  <polyline fill=\"none\" stroke=\"#2040c0\" stroke-width=\"1.2\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      if (i) out << " ";
      out << fmt(px(p[pr.u].get<double>())) << "," << fmt(py(p[pr.v].get<double>()));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace poncelet
