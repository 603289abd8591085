#include <cmath>
#include <limits>

#include "doctest.h"
#include "poncelet/abeljacobi.hpp"

using namespace poncelet;

namespace {

// midpoint quadrature oracle, valid away from branch values
double midpoint_oracle(const HyperellipticCurve& c, int j, double a, double b) {
  const long N = 40000;
  double s = 0, h = (b - a) / N;
  for (long i = 0; i < N; ++i) {
    double x = a + (i + 0.5) * h;
    s += std::pow(x, j) / std::sqrt(c.poly(x)) * h;
  }
  return s;
}

}  // namespace

TEST_CASE("genus-1 curve from a 2d family") {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  CHECK(g.genus == 1);
  REQUIRE(g.branch.size() == 3);
  CHECK(g.branch[0] == 1);
  CHECK(g.branch[1] == 2.5);
  CHECK(g.branch[2] == 4);
  auto bands = g.positive_bands();
  REQUIRE(bands.size() == 2);
  CHECK(std::isinf(bands[0].first));
  CHECK(bands[0].second == 1);
  CHECK(bands[1].first == 2.5);
  CHECK(bands[1].second == 4);
}

TEST_CASE("interior integral matches quadrature") {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  double got = incomplete_integral(g, 0, 2.6, 3.4);
  double want = midpoint_oracle(g, 0, 2.6, 3.4);
  CHECK(got == doctest::Approx(want).epsilon(1e-7));
  double got1 = incomplete_integral(g, 1, 2.6, 3.4);
  double want1 = midpoint_oracle(g, 1, 2.6, 3.4);
  CHECK(got1 == doctest::Approx(want1).epsilon(1e-7));
}

TEST_CASE("integral additivity and orientation") {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  double whole = incomplete_integral(g, 0, 2.5, 4.0);
  double split =
      incomplete_integral(g, 0, 2.5, 3.1) + incomplete_integral(g, 0, 3.1, 4.0);
  CHECK(whole == doctest::Approx(split).epsilon(1e-9));
  CHECK(incomplete_integral(g, 0, 3.4, 2.6) ==
        doctest::Approx(-incomplete_integral(g, 0, 2.6, 3.4)).epsilon(1e-12));
  // lower sheet flips the sign of the differential
  CHECK(incomplete_integral(g, 0, 2.6, 3.4, -1) ==
        doctest::Approx(-incomplete_integral(g, 0, 2.6, 3.4)).epsilon(1e-12));
}

TEST_CASE("integration across a negative region is rejected") {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  CHECK_THROWS_AS(incomplete_integral(g, 0, 0.5, 3.0), IntervalCrossesNegativeRegion);
  // the real part drops the imaginary middle piece
  double rp = real_part_integral(g, 0, 0.5, 3.0);
  double pieces = incomplete_integral(g, 0, 0.5, 1.0) + incomplete_integral(g, 0, 2.5, 3.0);
  CHECK(rp == doctest::Approx(pieces).epsilon(1e-10));
}

TEST_CASE("lattice membership accepts small combinations and rejects halves") {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  PeriodLattice lat = real_period_lattice(g);
  CHECK(lat.genus == 1);
  REQUIRE(!lat.gens.empty());
  CHECK(lat.shortest > 0);

  // generators may be redundant, so only the residual is pinned down
  for (long c = -3; c <= 3; ++c) {
    AbelVector v{{c * lat.gens[0][0]}, false};
    Membership m = lattice_membership(lat, v, 3);
    CHECK(m.accepted);
    CHECK(m.residual < 1e-10);
  }

  AbelVector h{{lat.gens[0][0] / 2}, false};
  Membership mh = lattice_membership(lat, h, 3);
  CHECK_FALSE(mh.accepted);
  CHECK(mh.residual >= 0.1 * lat.shortest);
}

TEST_CASE("genus-2 curve of a 3d family has two real period generators") {
  ConfocalFamily f3({9, 4, 1});
  HyperellipticCurve g = curve_gamma(f3, {6, 2});
  CHECK(g.genus == 2);
  PeriodLattice lat = real_period_lattice(g);
  CHECK(lat.gens.size() >= 2);
  for (const auto& v : lat.gens) CHECK(v.size() == 2);
}

TEST_CASE("odd-degree curve supports the unbounded band") {
  ConfocalFamily f3({9, 4, 1});
  HyperellipticCurve g1 = curve_gamma1(f3, {2.5});
  CHECK(g1.genus == 2);
  auto bands = g1.positive_bands();
  REQUIRE(!bands.empty());
  CHECK(std::isinf(bands[0].first));
  double inf = std::numeric_limits<double>::infinity();
  double u = incomplete_integral(g1, 1, -inf, 0.0);
  CHECK(std::isfinite(u));
  CHECK(u != 0);
}

TEST_CASE("high genus needs an explicit override") {
  HyperellipticCurve c = curve_from_branch({1, 2, 3, 4, 5, 6, 7, 8}, 1.0);
  CHECK(c.genus == 3);
  CHECK_THROWS_AS(real_period_lattice(c), DegenerateCurve);
  PeriodLattice lat = real_period_lattice(c, true);
  CHECK(lat.genus == 3);
}

TEST_CASE("coincident branch values are rejected") {
  CHECK_THROWS_AS(curve_from_branch({1, 1, 2}, 1.0), DegenerateCurve);
}

TEST_CASE("bracketing branch pair around the reflection set") {
  std::pair<double, double> mu = find_mu_pair({0.0, 1.0, 2.5, 4.0}, {1.2, 2.0});
  CHECK(mu.first == 1.0);
  CHECK(mu.second == 2.5);
  CHECK_THROWS_AS(find_mu_pair({0.0, 1.0}, {0.5, 1.5}), NoValidMuPair);
}

TEST_CASE("divisor multiplicities by adjacent reflection types") {
  std::vector<DivisorValue> t =
      divisor_table(Signature{{1, 1}}, {0.0, 0.5}, 0.0, 1.0);
  REQUIRE(t.size() == 2);
  CHECK(t[0].c_mu_double_prime == 1);
  CHECK(t[0].c_mu_prime == 0);

  // inside bounce followed by an outside bounce on a larger quadric: empty
  std::vector<DivisorValue> t2 =
      divisor_table(Signature{{1, -1, 1}, }, {0.0, 0.5, 0.0}, 0.0, 1.0);
  CHECK(t2[0].c_mu_prime == 0);
  CHECK(t2[0].c_mu_double_prime == 0);
  // outside bounce followed by an inside bounce on a smaller quadric: empty
  CHECK(t2[1].c_mu_prime == 0);
  CHECK(t2[1].c_mu_double_prime == 0);
  // inside-inside wrap contributes the upper branch point
  CHECK(t2[2].c_mu_double_prime == 1);
}
