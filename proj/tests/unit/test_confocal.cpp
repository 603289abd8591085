#include <cmath>

#include "doctest.h"
#include "poncelet/confocal.hpp"

using namespace poncelet;

namespace {

struct Rng {
  uint64_t s = 0x2545f4914f6cdd1dull;
  double uni() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

}  // namespace

TEST_CASE("elliptic coordinates of (1,1) in family (3,1)") {
  ConfocalFamily fam({3, 1});
  EllipticCoords ec = elliptic_coordinates(fam, {1, 1});
  CHECK(ec[0] == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ec[1] == doctest::Approx(1 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("a point on Q_0 has a zero coordinate") {
  ConfocalFamily fam({4, 1});
  std::vector<double> p = {2 * std::cos(0.7), std::sin(0.7)};
  EllipticCoords ec = elliptic_coordinates(fam, p);
  double best = std::min(std::abs(ec[0]), std::abs(ec[1]));
  CHECK(best < 1e-12);
}

TEST_CASE("coordinate residuals and interlacing for random interior points") {
  ConfocalFamily fam({9, 4, 1});
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> p(3);
    for (int i = 0; i < 3; ++i) p[i] = (2 * rng.uni() - 1) * 0.7 * std::sqrt(fam.a[i]);
    EllipticCoords ec = elliptic_coordinates(fam, p);
    REQUIRE(ec.size() == 3);
    CHECK(ec[0] > ec[1]);
    CHECK(ec[1] > ec[2]);
    CHECK(ec[0] <= fam.a[0] + 1e-12);
    CHECK(ec[0] >= fam.a[1] - 1e-12);
    CHECK(ec[1] <= fam.a[1] + 1e-12);
    CHECK(ec[1] >= fam.a[2] - 1e-12);
    CHECK(ec[2] <= fam.a[2] + 1e-12);
    for (double l : ec) {
      double r = -1;
      for (int i = 0; i < 3; ++i) r += p[i] * p[i] / (fam.a[i] - l);
      CHECK(std::abs(r) < 1e-10);
    }
  }
}

TEST_CASE("cartesian roundtrip") {
  ConfocalFamily fam({9, 4, 1});
  Rng rng;
  int tested = 0;
  for (int t = 0; t < 200 && tested < 100; ++t) {
    std::vector<double> p(3);
    std::vector<int> signs(3);
    for (int i = 0; i < 3; ++i) {
      p[i] = (2 * rng.uni() - 1) * 0.7 * std::sqrt(fam.a[i]);
      if (std::abs(p[i]) < 1e-3) p[i] = 0.1;
      signs[i] = p[i] >= 0 ? 1 : -1;
    }
    EllipticCoords ec = elliptic_coordinates(fam, p);
    std::vector<double> q = cartesian_from_elliptic(fam, ec, signs);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(q[i] - p[i]) < 1e-10 * (1 + std::abs(p[i])));
    ++tested;
  }
  CHECK(tested == 100);
}

TEST_CASE("tangency parameter of a horizontal line") {
  ConfocalFamily fam({3, 1});
  // y = 1/2 touches Q_alpha where 1/4 = 1 - alpha
  CausticSet c = caustic_parameters(fam, {0, 0.5}, {1, 0});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("focal axis degenerates to the focal value") {
  ConfocalFamily fam({3, 1});
  CausticSet c = caustic_parameters(fam, {0.3, 0}, {1, 0});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tangency parameters ignore the line parametrization") {
  ConfocalFamily fam({9, 4, 1});
  std::vector<double> base = {0.4, -0.9, 0.3}, dir = {0.5, 0.7, -0.4};
  CausticSet c1 = caustic_parameters(fam, base, dir);
  std::vector<double> base2 = base, dir2 = dir;
  for (int i = 0; i < 3; ++i) {
    base2[i] += 2.7 * dir[i];
    dir2[i] *= -3.1;
  }
  CausticSet c2 = caustic_parameters(fam, base2, dir2);
  REQUIRE(c1.size() == c2.size());
  for (size_t i = 0; i < c1.size(); ++i)
    CHECK(std::abs(c1[i] - c2[i]) < 1e-10 * (1 + std::abs(c1[i])));
}

TEST_CASE("zero direction is rejected") {
  ConfocalFamily fam({3, 1});
  CHECK_THROWS_AS(caustic_parameters(fam, {1, 0}, {0, 0}), DegenerateLine);
}

TEST_CASE("admissibility polynomial") {
  ConfocalFamily f2({3, 1});
  AdmissiblePolynomial p2 = admissibility_polynomial(f2, {0.75});
  CHECK(p2.poly.degree() == 3);
  CHECK(p2.poly(2.0) == doctest::Approx((3 - 2.0) * (1 - 2.0) * (0.75 - 2.0)));
  CHECK(p2.poly(3.0) == 0);
  CHECK(p2.poly(1.0) == 0);
  CHECK(p2.poly(0.75) == 0);

  ConfocalFamily f3({9, 4, 1});
  AdmissiblePolynomial p3 = admissibility_polynomial(f3, {6, 2});
  CHECK(p3.poly.degree() == 5);
  CHECK(p3.poly(0.0) == doctest::Approx(432.0));
}

TEST_CASE("lemma 1 evaluation") {
  ConfocalFamily fam({3, 1});
  AdmissiblePolynomial p = admissibility_polynomial(fam, {0.75});
  CHECK(check_lemma1({2.0, 0.5}, p, 0));
  CHECK(check_lemma1({3.0, 0.75}, p, 0));  // boundary values are exact roots
  CHECK_FALSE(check_lemma1({2.0, 0.9}, p, 1e-9));
}

TEST_CASE("caustic types index the bands") {
  ConfocalFamily fam({9, 4, 1});
  CHECK(caustic_type(fam, -2.0) == 0);
  CHECK(caustic_type(fam, 0.5) == 0);
  CHECK(caustic_type(fam, 2.0) == 1);
  CHECK(caustic_type(fam, 6.0) == 2);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(ConfocalFamily({4.0}), NonFiniteInput);
  CHECK_THROWS_AS(ConfocalFamily({1.0, 4.0}), NonFiniteInput);
  CHECK_THROWS_AS(ConfocalFamily({4.0, -1.0}), NonFiniteInput);
}
