#include <cmath>

#include "doctest.h"
#include "poncelet/search.hpp"

using namespace poncelet;

TEST_CASE("triangle caustic in the ellipse") {
  ConfocalFamily fam({4, 1});
  D2Closure c = d2_find_caustic_for_period(fam, 3);
  CHECK(c.period == 3);
  CHECK(c.vertex_error < 1e-9);
  CHECK(c.caustic > 0);
  CHECK(c.caustic < 1);
  // the found caustic closes from a different boundary start too
  std::vector<double> p = {2 * std::cos(2.1), std::sin(2.1)};
  std::vector<double> v = d2_direction_for_caustic(fam, p, c.caustic);
  Domain dom{fam, {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, p, v, 3);
  double err = 0;
  for (int i = 0; i < 2; ++i)
    err = std::max(err, std::abs(t.vertices[3][i] - t.vertices[0][i]));
  CHECK(err < 1e-6);
}

TEST_CASE("periods are distinct and ordered by caustic parameter") {
  ConfocalFamily fam({4, 1});
  double prev = 2;
  for (int n = 3; n <= 6; ++n) {
    D2Closure c = d2_find_caustic_for_period(fam, n);
    CHECK(c.vertex_error < 1e-9);
    // longer periods hug the boundary, so the caustic parameter shrinks
    CHECK(c.caustic < prev);
    prev = c.caustic;
  }
}

TEST_CASE("tangent direction touches the caustic") {
  ConfocalFamily fam({4, 1});
  double alpha = 0.6;
  std::vector<double> p = {2 * std::cos(0.8), std::sin(0.8)};
  std::vector<double> v = d2_direction_for_caustic(fam, p, alpha);
  CausticSet ca = caustic_parameters(fam, p, v);
  REQUIRE(ca.size() == 1);
  CHECK(ca[0] == doctest::Approx(alpha).epsilon(1e-9));
}

TEST_CASE("alternating game caustic, frozen high-precision value") {
  ConfocalFamily fam({4, 1});
  BigReal al = d2_game_caustic(fam, 0.99, 3, 320);
  // closure caustic of the 6-bounce alternating game between Q_0 and Q_0.99;
  // value pinned by an independent earlier run at higher precision
  BigReal ref("0.990089239910072769363720423187");
  CHECK(abs(BigReal(al - ref)) < BigReal(1e-20));
}

TEST_CASE("closed orbit search in the solid ellipsoid") {
  ConfocalFamily f3({9, 4, 1});
  auto c = d3_find_closed_orbit(f3, {4, 5, 6, 7, 8}, 40, 1e-9);
  REQUIRE(c.has_value());
  CHECK(c->defect < 1e-9);
  CHECK(c->caustics.size() == 2);
  // replay the found data through the simulator
  Domain dom{f3, {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, c->start, c->direction, c->period);
  double err = 0;
  for (int i = 0; i < 3; ++i)
    err = std::max(err, std::abs(t.vertices[c->period][i] - t.vertices[0][i]));
  CHECK(err < 1e-7);
}
