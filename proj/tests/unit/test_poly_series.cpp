#include "doctest.h"
#include "poncelet/real.hpp"
#include "poncelet/series.hpp"

using namespace poncelet;

namespace {

Poly<BigReal> big_poly(std::initializer_list<double> coeffs) {
  std::vector<BigReal> c;
  for (double v : coeffs) c.emplace_back(v);
  return Poly<BigReal>(std::move(c));
}

struct Rng {
  uint64_t s = 0x853c49e6748fea9bull;
  double uni() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

}  // namespace

TEST_CASE("square root of a perfect square is linear") {
  // (2 - x)^2 = 4 - 4x + x^2, expanded around 0: sqrt = 2 - x exactly
  Poly<BigReal> p = big_poly({4, -4, 1});
  TruncatedSeries s = sqrt_of_poly(p, BigReal(0), 1, 8, 256);
  CHECK(BigReal(s.c[0] - 2) == 0);
  CHECK(BigReal(s.c[1] + 1) == 0);
  for (int i = 2; i <= 8; ++i) CHECK(s.c[i] == 0);
  TruncatedSeries n = sqrt_of_poly(p, BigReal(0), -1, 8, 256);
  CHECK(BigReal(n.c[0] + 2) == 0);
}

TEST_CASE("square of the series recovers the shifted polynomial") {
  PrecisionGuard guard(320);
  Rng rng;
  for (int t = 0; t < 10; ++t) {
    std::vector<BigReal> c(7);
    for (auto& v : c) v = BigReal(2 * rng.uni() - 1);
    Poly<BigReal> p{std::move(c)};
    BigReal center(0.3);
    while (p(center) <= BigReal(0.1)) p.c[0] += BigReal(0.5);
    TruncatedSeries s = sqrt_of_poly(p, center, 1, 20, 256);
    TruncatedSeries sq = series_mul(s, s);
    Poly<BigReal> shifted = p.shifted(center);
    BigReal worst(0);
    for (int i = 0; i <= 20; ++i) {
      BigReal want = (i <= shifted.degree()) ? shifted.c[i] : BigReal(0);
      BigReal err = abs(BigReal(sq.c[i] - want));
      if (err > worst) worst = err;
    }
    CHECK(worst < pow2(-240));
  }
}

TEST_CASE("vanishing polynomial at the center is rejected") {
  Poly<BigReal> p = big_poly({0, 1});  // x, zero at 0
  CHECK_THROWS_AS(sqrt_of_poly(p, BigReal(0), 1, 4, 128), BranchPointCenter);
  Poly<BigReal> q = big_poly({-1, 0, 1});  // x^2 - 1, negative at 0
  CHECK_THROWS_AS(sqrt_of_poly(q, BigReal(0), 1, 4, 128), BranchPointCenter);
}

TEST_CASE("series arithmetic respects centers") {
  Poly<BigReal> p = big_poly({4, 1});
  TruncatedSeries a = sqrt_of_poly(p, BigReal(0), 1, 4, 128);
  TruncatedSeries b = sqrt_of_poly(p, BigReal(1), 1, 4, 128);
  CHECK_THROWS_AS(series_add(a, b), CenterMismatch);
  CHECK_THROWS_AS(series_mul(a, b), CenterMismatch);
}

TEST_CASE("division round-trips multiplication") {
  PrecisionGuard guard(256);
  Poly<BigReal> p = big_poly({9, -2, 1, 0.5});
  Poly<BigReal> q = big_poly({4, 1, -1});
  TruncatedSeries sp = sqrt_of_poly(p, BigReal(0.2), 1, 12, 192);
  TruncatedSeries sq = sqrt_of_poly(q, BigReal(0.2), 1, 12, 192);
  TruncatedSeries r = series_div(series_mul(sp, sq), sq);
  for (int i = 0; i <= 12; ++i)
    CHECK(abs(BigReal(r.c[i] - sp.c[i])) < pow2(-180));
}

TEST_CASE("mobius substitution agrees with direct evaluation") {
  PrecisionGuard guard(320);
  // y = sqrt(P(x)) in the variable u = 1/(alpha - x) - 1/(alpha - gamma)
  Poly<BigReal> p = big_poly({6, -11, 6, -1});  // (1-x)(2-x)(3-x)
  BigReal alpha(5), gamma(0.4);
  TruncatedSeries s = mobius_substitute(p, alpha, gamma, 24, 256);
  CHECK(abs(BigReal(s.c[0] - sqrt(p(gamma)))) < pow2(-240));
  for (double dx : {0.003, -0.004, 0.0015}) {
    BigReal x = gamma + BigReal(dx);
    BigReal u = 1 / (alpha - x) - 1 / (alpha - gamma);
    BigReal got = s.eval_offset(u);
    BigReal want = sqrt(p(x));
    CHECK(abs(BigReal(got - want)) < BigReal(1e-40));
  }
}

TEST_CASE("mobius substitution rejects a pole at the center") {
  Poly<BigReal> p = big_poly({6, -11, 6, -1});
  CHECK_THROWS_AS(mobius_substitute(p, BigReal(0.4), BigReal(0.4), 8, 128),
                  SubstitutionPole);
}

TEST_CASE("taylor shift oracle") {
  Poly<double> p(std::vector<double>{1, -3, 0, 2});
  Poly<double> q = p.shifted(1.5);
  for (double u : {-0.7, 0.0, 0.3, 2.0})
    CHECK(q(u) == doctest::Approx(p(1.5 + u)).epsilon(1e-13));
}

TEST_CASE("real root isolation on a wiggly quintic") {
  // roots at -2, -0.5, 0.1, 1, 3
  Poly<double> p = Poly<double>::from_roots_neg({-2, -0.5, 0.1, 1, 3});
  std::vector<double> r = real_roots_in(p, -10.0, 10.0);
  REQUIRE(r.size() == 5);
  std::vector<double> want = {-2, -0.5, 0.1, 1, 3};
  for (size_t i = 0; i < 5; ++i) CHECK(r[i] == doctest::Approx(want[i]).epsilon(1e-10));
}
