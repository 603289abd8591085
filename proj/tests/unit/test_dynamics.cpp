#include <cmath>

#include "doctest.h"
#include "poncelet/dynamics.hpp"

using namespace poncelet;

TEST_CASE("bounce count and vertex count") {
  Domain dom{ConfocalFamily({4, 1}), {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, {0.3, 0.2}, {0.7, 0.3}, 10);
  CHECK(t.vertices.size() == 11);
  // one direction per vertex: the last one is the outgoing direction
  CHECK(t.directions.size() == 11);
  CHECK(t.bounces.size() == 10);
  for (const auto& d : t.directions)
    CHECK(std::abs(norm(d) - 1.0) < 1e-12);
  for (const auto& b : t.bounces)
    CHECK(std::abs(quadric_eval(dom.family.a, b.lambda, b.vertex)) < 1e-9);
}

TEST_CASE("simulation is deterministic") {
  Domain dom{ConfocalFamily({4, 1}), {Wall{0.0, 1}}};
  Trajectory t1 = simulate(dom, {0.3, 0.2}, {0.7, 0.3}, 40);
  Trajectory t2 = simulate(dom, {0.3, 0.2}, {0.7, 0.3}, 40);
  REQUIRE(t1.vertices.size() == t2.vertices.size());
  for (size_t i = 0; i < t1.vertices.size(); ++i)
    for (size_t j = 0; j < t1.vertices[i].size(); ++j)
      CHECK(t1.vertices[i][j] == t2.vertices[i][j]);
}

TEST_CASE("reflection preserves speed and tangential component") {
  ConfocalFamily fam({4, 1});
  std::vector<double> p = {2 * std::cos(0.9), std::sin(0.9)};
  std::vector<double> v = {-0.8, -0.6};
  std::vector<double> r = reflect(fam, 0.0, p, v);
  CHECK(std::abs(norm(r) - norm(v)) < 1e-12);
  std::vector<double> n = quadric_grad(fam.a, 0.0, p);
  normalize(n);
  CHECK(std::abs(dot(r, n) + dot(v, n)) < 1e-12);  // normal component flips
  std::vector<double> tg = {-n[1], n[0]};
  CHECK(std::abs(dot(r, tg) - dot(v, tg)) < 1e-12);
}

TEST_CASE("reflection rejects points off the quadric") {
  ConfocalFamily fam({4, 1});
  CHECK_THROWS_AS(reflect(fam, 0.0, {0.5, 0.5}, {1, 0}), PointNotOnQuadric);
}

TEST_CASE("caustic is conserved along an ellipse billiard") {
  Domain dom{ConfocalFamily({4, 1}), {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, {0.1, -0.4}, {0.9, 0.45}, 100);
  REQUIRE(t.caustics.size() == 1);
  CHECK(t.max_caustic_deviation < 1e-9);
}

TEST_CASE("axial orbit is 2-periodic") {
  Domain dom{ConfocalFamily({4, 1}), {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, {2.0, 0.0}, {-1.0, 0.0}, 6);
  std::optional<int> per = detect_period(t, 1e-9, 1e-9);
  REQUIRE(per.has_value());
  CHECK(*per == 2);
}

TEST_CASE("generic orbit has no short period") {
  Domain dom{ConfocalFamily({4, 1}), {Wall{0.0, 1}}};
  Trajectory t = simulate(dom, {0.37, 0.21}, {0.83, 0.41}, 12);
  std::optional<int> per = detect_period(t, 1e-9, 1e-9);
  CHECK_FALSE(per.has_value());
}

TEST_CASE("signature validation") {
  // outside bounces (-1) need inside neighbours on strictly smaller quadrics
  CHECK(validate_signature({0.0, 0.5}, Signature{{1, 1}}));
  CHECK(validate_signature({0.0, 0.5}, Signature{{1, -1}}));
  CHECK_FALSE(validate_signature({0.0, 0.5}, Signature{{-1, 1}}));
  CHECK_FALSE(validate_signature({0.0, 0.5}, Signature{{-1, -1}}));
  CHECK(validate_signature({0.0, 0.5, 0.0}, Signature{{1, -1, 1}}));
  CHECK_FALSE(validate_signature({0.0, 0.5}, Signature{{1}}));
  CHECK_FALSE(validate_signature({0.0, 0.5}, Signature{{1, 2}}));
}

TEST_CASE("alternating two-quadric game runs and keeps its caustic") {
  ConfocalFamily fam({4, 1});
  // hit the ellipse Q_0 from inside, then Q_0.5 from outside
  std::vector<double> p = {0.0, -0.9};
  std::vector<double> v = {0.35, 1.0};
  normalize(v);
  Trajectory t = play_ordered_game(fam, {0.0, 0.5}, Signature{{1, -1}}, p, v, 8);
  CHECK(t.vertices.size() == 17);
  CHECK(t.max_caustic_deviation < 1e-9);
  for (size_t k = 0; k < t.bounces.size(); ++k) {
    double expect = (k % 2 == 0) ? 0.0 : 0.5;
    CHECK(t.bounces[k].lambda == expect);
  }
}

TEST_CASE("game rejects unreachable targets") {
  ConfocalFamily fam({4, 1});
  std::vector<double> p = {1.95, 0.0};
  std::vector<double> v = {-0.35, 0.94};
  normalize(v);
  // asking to hit Q_0.5 from the inside while starting outside it
  CHECK_THROWS_AS(play_ordered_game(fam, {0.5, 0.0}, Signature{{1, 1}}, p, v, 2),
                  OrderViolation);
}

TEST_CASE("free geodesics on the ellipsoid keep both tangency parameters") {
  ConfocalFamily fam({9, 4, 1});
  std::vector<double> p = cartesian_from_elliptic(fam, {6.5, 2.5, 0.0}, {1, 1, 1});
  // any unit tangent direction
  std::vector<double> n = quadric_grad(fam.a, 0.0, p);
  normalize(n);
  std::vector<double> v = {0.3, -0.5, 0.8};
  double c = dot(v, n);
  for (int i = 0; i < 3; ++i) v[i] -= c * n[i];
  normalize(v);
  Trajectory t = geodesic_billiard_on_ellipsoid(fam, {}, p, v, 0, 12.0);
  CHECK(t.path.size() > 100);
  CHECK(t.caustics.size() == 2);
  CHECK(t.max_caustic_deviation < 1e-4);
  for (const auto& q : t.path)
    CHECK(std::abs(quadric_eval(fam.a, 0.0, q)) < 1e-6);
}

TEST_CASE("constrained billiard reflects at the boundary curve") {
  ConfocalFamily fam({9, 4, 1});
  double gamma = 2.0;
  std::vector<double> p = cartesian_from_elliptic(fam, {6.5, 3.0, 0.0}, {1, 1, 1});
  std::vector<double> n = quadric_grad(fam.a, 0.0, p);
  normalize(n);
  std::vector<double> v = {0.4, -0.7, 0.59};
  double c = dot(v, n);
  for (int i = 0; i < 3; ++i) v[i] -= c * n[i];
  normalize(v);
  Trajectory t = geodesic_billiard_on_ellipsoid(fam, {Wall{gamma, 1}}, p, v, 5, 500.0);
  CHECK(t.vertices.size() == 6);
  for (const auto& b : t.bounces) {
    CHECK(std::abs(quadric_eval(fam.a, gamma, b.vertex)) < 1e-7);
    CHECK(std::abs(quadric_eval(fam.a, 0.0, b.vertex)) < 1e-7);
  }
}

TEST_CASE("domain lambda bounds fall back to band edges") {
  Domain dom{ConfocalFamily({9, 4, 1}), {Wall{0.0, 1}}};
  auto b = dom.lambda_bounds();
  REQUIRE(b.size() == 3);
  CHECK(b[0].second == 9);
  CHECK(b[1].second == 4);
  CHECK(b[2].second == 1);
}
