#include <string>

#include "doctest.h"
#include "poncelet/json_io.hpp"
#include "poncelet/render.hpp"

using namespace poncelet;

namespace {

const char* kEllipseScene = R"({
  "format_version": 1,
  "family": {"semi_axes": [4, 1]},
  "walls": [{"lambda": 0, "side": "inside"}],
  "start": {"point": [0.3, 0.2], "direction": [0.7, 0.3]},
  "precision_bits": 128
})";

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("scene parsing") {
  Scene sc = parse_scene(kEllipseScene);
  CHECK(sc.semi_axes == std::vector<double>{4, 1});
  REQUIRE(sc.walls.size() == 1);
  CHECK(sc.walls[0].lambda == 0);
  CHECK(sc.walls[0].interior_sign == 1);
  CHECK_FALSE(sc.start_auto);
  CHECK(sc.precision_bits == 128);
  CHECK_FALSE(sc.is_game());
}

TEST_CASE("numbers may arrive as decimal strings") {
  Scene sc = parse_scene(R"({
    "format_version": 1,
    "family": {"semi_axes": ["4.0", 1]},
    "walls": [{"lambda": "0.25", "side": "outside"}]
  })");
  CHECK(sc.semi_axes[0] == 4.0);
  CHECK(sc.walls[0].lambda == 0.25);
  CHECK(sc.walls[0].interior_sign == -1);
  CHECK(sc.start_auto);
}

TEST_CASE("scene roundtrip through its serialization") {
  Scene sc = parse_scene(kEllipseScene);
  Scene back = parse_scene(scene_to_json(sc));
  CHECK(back.semi_axes == sc.semi_axes);
  CHECK(back.walls.size() == sc.walls.size());
  CHECK(back.start_point == sc.start_point);
  CHECK(back.start_direction == sc.start_direction);
  CHECK(back.precision_bits == sc.precision_bits);
  // serialization is canonical: a second pass is byte-identical
  CHECK(scene_to_json(back) == scene_to_json(sc));
}

TEST_CASE("schema errors name the offending field") {
  auto expect_message = [](const char* text, const std::string& fragment) {
    try {
      parse_scene(text);
      FAIL_CHECK("expected a schema error for: " << fragment);
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_message(R"({"family": {"semi_axes": [4, 1]}})", "format_version");
  expect_message(R"({"format_version": 1})", "family.semi_axes");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [1, 4]},
                     "walls": [{"lambda": 0, "side": "inside"}]})",
                 "strictly decreasing");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [4, -1]},
                     "walls": [{"lambda": 0, "side": "inside"}]})",
                 "semi_axes[1]");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [4, 1]}})",
                 "walls / game");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [4, 1]},
                     "walls": [{"lambda": 0, "side": "between"}]})",
                 "walls[0].side");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [4, 1]},
                     "game": {"betas": [0, 0.5], "signature": [-1, 1]}})",
                 "signature[0]");
  expect_message(R"({"format_version": 1, "family": {"semi_axes": [4, 1]},
                     "walls": [{"lambda": 0, "side": "inside"}],
                     "precision_bits": 8})",
                 "precision_bits");
}

TEST_CASE("auto start lands on the wall heading inward") {
  Scene sc = parse_scene(R"({
    "format_version": 1,
    "family": {"semi_axes": [4, 1]},
    "walls": [{"lambda": 0, "side": "inside"}]
  })");
  resolve_start(sc);
  REQUIRE(sc.start_point.size() == 2);
  REQUIRE(sc.start_direction.size() == 2);
  ConfocalFamily fam = sc.family();
  CHECK(std::abs(quadric_eval<double>(fam.a, 0.0, sc.start_point)) < 1e-12);
  // simulation must accept the resolved start
  Domain dom{fam, sc.walls};
  Trajectory t = simulate(dom, sc.start_point, sc.start_direction, 5);
  CHECK(t.vertices.size() == 6);
}

TEST_CASE("trajectory serialization is deterministic") {
  Scene sc = parse_scene(kEllipseScene);
  Domain dom{sc.family(), sc.walls};
  Trajectory t = simulate(dom, sc.start_point, sc.start_direction, 12);
  std::string a = trajectory_to_json(sc, t);
  std::string b = trajectory_to_json(sc, t);
  CHECK(a == b);
  CHECK(a.find("\"format_version\"") != std::string::npos);
  CHECK(a.find("\"vertices\"") != std::string::npos);
  CHECK(a.find("\"caustics\"") != std::string::npos);
}

TEST_CASE("svg rendering of a flat trajectory") {
  Scene sc = parse_scene(kEllipseScene);
  Domain dom{sc.family(), sc.walls};
  Trajectory t = simulate(dom, sc.start_point, sc.start_direction, 12);
  std::string svg = render_trajectory_svg(trajectory_to_json(sc, t), "xy");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_occurrences(svg, "<polyline") == 1);
  // 13 vertices -> 13 points in the polyline
  size_t pts = count_occurrences(svg, ",");
  CHECK(pts >= 13);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("rendering honours the projection plane for 3d scenes") {
  Scene sc = parse_scene(R"({
    "format_version": 1,
    "family": {"semi_axes": [9, 4, 1]},
    "walls": [{"lambda": 0, "side": "inside"}],
    "start": {"point": [0.3, 0.2, 0.1], "direction": [0.5, 0.4, 0.7]}
  })");
  Domain dom{sc.family(), sc.walls};
  Trajectory t = simulate(dom, sc.start_point, sc.start_direction, 8);
  std::string doc = trajectory_to_json(sc, t);
  std::string xy = render_trajectory_svg(doc, "xy");
  std::string xz = render_trajectory_svg(doc, "xz");
  std::string yz = render_trajectory_svg(doc, "yz");
  CHECK(xy != xz);
  CHECK(xz != yz);
  CHECK_THROWS_AS(render_trajectory_svg(doc, "ww"), SchemaError);
}

TEST_CASE("empty trajectory renders the scene without a path") {
  Scene sc = parse_scene(kEllipseScene);
  Trajectory t;
  std::string svg = render_trajectory_svg(trajectory_to_json(sc, t), "xy");
  CHECK(count_occurrences(svg, "<polyline") == 0);
  CHECK(count_occurrences(svg, "<ellipse") >= 1);
}

TEST_CASE("decimal formatting survives a round trip") {
  PrecisionGuard g(256);
  BigReal v = sqrt(BigReal(2));
  std::string s = format_real(v, 256);
  BigReal back(s);
  CHECK(abs(BigReal(back - v)) < pow2(-250) * v);
  CHECK(format_real(BigReal(0), 256) == "0");
}

TEST_CASE("content digest is stable and sensitive") {
  CHECK(content_digest("") == "cbf29ce484222325");
  CHECK(content_digest("a") != content_digest("b"));
  CHECK(content_digest("abc") == content_digest("abc"));
}
