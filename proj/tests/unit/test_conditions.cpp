#include "doctest.h"
#include "poncelet/conditions.hpp"

using namespace poncelet;

namespace {

PencilDiscriminant pencil(double a1, double a2, double al) {
  return {Poly<BigReal>::from_roots_neg({BigReal(a1), BigReal(a2), BigReal(al)})};
}

}  // namespace

TEST_CASE("repeated bounce parameter makes the determinant vanish") {
  PencilDiscriminant d = pencil(4, 1, 0.5);
  ConditionReport r = lebesgue_condition(d, {BigReal(0.2), BigReal(0.2)}, 128);
  CHECK(r.decision == Decision::satisfied);
  CHECK(r.residual == 0);
}

TEST_CASE("generic distinct parameters are rejected") {
  PencilDiscriminant d = pencil(4, 1, 0.5);
  ConditionReport r = lebesgue_condition(d, {BigReal(0.0), BigReal(0.2)}, 128);
  CHECK(r.decision == Decision::not_satisfied);
  CHECK(r.residual > 1e-6);
}

TEST_CASE("negative discriminant at a bounce parameter is an error") {
  PencilDiscriminant d = pencil(4, 1, 0.5);
  CHECK_THROWS_AS(lebesgue_condition(d, {BigReal(0.7), BigReal(0.2)}, 128),
                  NegativeDiscriminant);
  CHECK_THROWS_AS(lebesgue_condition(d, {BigReal(0.2)}, 128), NonFiniteInput);
}

TEST_CASE("collinear points on the discriminant curve satisfy the test") {
  PrecisionGuard g(320);
  // Delta = (4-x)(1-x)(0.5-x); a line meets y^2 = Delta(x) in three points
  // whose parameters must pass the k = 3 test with matching sheet signs.
  Poly<double> dd({2.0, -6.5, 5.5, -1.0});
  double a = 0.3, b = 0.35;
  Poly<double> line({a, b});
  Poly<double> res = dd - line * line;
  std::vector<double> xs = real_roots_in(res, -10.0, 10.0);
  REQUIRE(xs.size() == 3);

  Poly<BigReal> resh{{BigReal(2) - BigReal(0.3) * BigReal(0.3),
                      BigReal(-6.5) - 2 * BigReal(0.3) * BigReal(0.35),
                      BigReal(5.5) - BigReal(0.35) * BigReal(0.35), BigReal(-1)}};
  std::vector<BigReal> lam;
  std::vector<int> sg;
  for (double x : xs) {
    BigReal xr(x);
    for (int it = 0; it < 8; ++it) xr -= resh(xr) / resh.deriv()(xr);
    lam.push_back(xr);
    sg.push_back(a + b * x >= 0 ? 1 : -1);
  }
  PencilDiscriminant D{Poly<BigReal>{{BigReal(2), BigReal(-6.5), BigReal(5.5), BigReal(-1)}}};

  ConditionReport ok = lebesgue_condition(D, lam, 256, sg);
  CHECK(ok.decision == Decision::satisfied);
  CHECK(ok.certified);
  CHECK(ok.residual < 1e-50);

  ConditionReport flipped = lebesgue_condition(D, lam, 256, {sg[0], sg[1], -sg[2]});
  CHECK(flipped.decision == Decision::not_satisfied);
  CHECK(flipped.residual > 0.01);

  std::vector<BigReal> detuned = lam;
  detuned[2] += BigReal(1) / 100;
  ConditionReport bad = lebesgue_condition(D, detuned, 256, sg);
  CHECK(bad.decision == Decision::not_satisfied);
  CHECK(bad.residual > 1e-6);
}

TEST_CASE("degenerate alternating game closes trivially") {
  // gamma = 0 makes the two bounce families coincide
  PencilDiscriminant d = pencil(4, 1, 0.5);
  ConditionReport r = corollary1_condition(d, BigReal(0), 3, 128);
  CHECK(r.decision == Decision::satisfied);
  CHECK(r.residual == 0);
}

TEST_CASE("generic caustic fails the alternating closure test") {
  PencilDiscriminant d = pencil(4, 1, 0.5);
  ConditionReport r = corollary1_condition(d, BigReal(0.3), 3, 128);
  CHECK(r.decision == Decision::not_satisfied);
  CHECK(r.residual > 1e-6);
}

TEST_CASE("explicit 3x3 closure matrix") {
  TruncatedSeries B, C;
  B.center = BigReal(1);
  C.center = BigReal(0);
  B.c = {BigReal(1), BigReal(0), BigReal(0), BigReal(0)};
  C.c = B.c;
  // identical constant expansions: every entry collapses to zero
  Matrix<BigReal> X = example1_matrix(B, C, BigReal(1));
  for (const auto& v : X.data) CHECK(v == 0);

  TruncatedSeries shortB = B;
  shortB.c.resize(3);
  CHECK_THROWS_AS(example1_matrix(shortB, C, BigReal(1)), InsufficientOrder);
}

TEST_CASE("rank closure test is vacuous below the dimension") {
  ConfocalFamily f3({9, 4, 1});
  std::vector<BigReal> caustics = {BigReal(2.3), BigReal(0.9)};
  ConditionReport r = prop1_condition(f3, 0.0, 0.9, caustics, 2, 128);
  CHECK(r.decision == Decision::vacuous);
  CHECK_THROWS_AS(prop1_condition(f3, 0.0, 0.9, {BigReal(2.3)}, 5, 128),
                  NonFiniteInput);
}

TEST_CASE("constrained closure test shape and hypotheses") {
  ConfocalFamily f3({9, 4, 1});
  ConditionReport r = prop2_condition(f3, 1.5, 2.5, 8, 128);
  CHECK(r.matrix.rows == 4);
  CHECK(r.matrix.cols == 2);
  CHECK(r.rank >= 0);

  ConditionReport rv = prop2_condition(f3, 1.5, 2.5, 4, 128);
  CHECK(rv.decision == Decision::vacuous);

  CHECK_THROWS_AS(prop2_condition(f3, 5.0, 6.0, 8, 128), HypothesisViolated);
  CHECK_THROWS_AS(prop2_condition(f3, 2.5, 1.5, 8, 128), HypothesisViolated);
}
