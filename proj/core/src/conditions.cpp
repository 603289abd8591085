#include "poncelet/conditions.hpp"

#include <functional>

namespace poncelet {

namespace {

// |det| divided by the product of the row 2-norms (Hadamard bound).
BigReal scaled_abs_det(const Matrix<BigReal>& m) {
  using poncelet::abs;
  using poncelet::sqrt;
  BigReal scale(1);
  for (int i = 0; i < m.rows; ++i) {
    BigReal s(0);
    for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * m.at(i, j);
    if (s == 0) return BigReal(0);
    scale *= sqrt(s);
  }
  return abs(determinant(m)) / scale;
}

// Determinant-vanishing decision certified by rebuilding the matrix at
// doubled precision; each pass uses the threshold 2^{-bits/2}.
ConditionReport det_condition(const std::string& name,
                              const std::function<Matrix<BigReal>(unsigned)>& build,
                              unsigned precision_bits) {
  ConditionReport rep;
  rep.condition = name;
  rep.precision_bits = precision_bits;
  {
    PrecisionGuard guard(precision_bits);
    rep.matrix = build(precision_bits);
    BigReal s = scaled_abs_det(rep.matrix);
    rep.residual = static_cast<double>(s);
    rep.decision = (s < pow2(-static_cast<long>(precision_bits / 2)))
                       ? Decision::satisfied
                       : Decision::not_satisfied;
  }
  {
    PrecisionGuard guard(2 * precision_bits);
    BigReal s = scaled_abs_det(build(2 * precision_bits));
    bool sat2 = s < pow2(-static_cast<long>(precision_bits));
    rep.certified = (rep.decision == Decision::satisfied) == sat2;
  }
  return rep;
}

ConditionReport rank_condition(const std::string& name, Matrix<BigReal> m,
                               int rank_bound, unsigned precision_bits) {
  ConditionReport rep;
  rep.condition = name;
  rep.precision_bits = precision_bits;
  rep.matrix = std::move(m);
  RankDecision d = rank_decision(rep.matrix, precision_bits);
  rep.rank = d.rank;
  rep.residual = d.residual;
  rep.certified = d.certified;
  rep.decision = (d.rank < rank_bound) ? Decision::satisfied : Decision::not_satisfied;
  return rep;
}

ConditionReport vacuous_report(const std::string& name, unsigned precision_bits) {
  ConditionReport rep;
  rep.condition = name;
  rep.precision_bits = precision_bits;
  rep.decision = Decision::vacuous;
  rep.certified = true;
  return rep;
}

// Coefficients of P(center + u) as a series of the given order.
TruncatedSeries poly_as_series(const Poly<BigReal>& p, const BigReal& center, int N) {
  Poly<BigReal> s = p.shifted(center);
  TruncatedSeries r;
  r.center = center;
  r.c.assign(static_cast<size_t>(N) + 1, BigReal(0));
  for (int i = 0; i <= N && i <= s.degree(); ++i) r.c[static_cast<size_t>(i)] = s.c[i];
  return r;
}

Poly<BigReal> monomial(int degree) {
  std::vector<BigReal> c(static_cast<size_t>(degree) + 1, BigReal(0));
  c.back() = 1;
  return Poly<BigReal>(std::move(c));
}

}  // namespace

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::satisfied: return "satisfied";
    case Decision::not_satisfied: return "not_satisfied";
    case Decision::vacuous: return "vacuous";
  }
  return "?";
}

ConditionReport lebesgue_condition(const PencilDiscriminant& delta,
                                   const std::vector<BigReal>& lambdas,
                                   unsigned precision_bits,
                                   const std::vector<int>& branch_signs) {
  const int k = static_cast<int>(lambdas.size());
  if (!branch_signs.empty() && branch_signs.size() != lambdas.size())
    throw NonFiniteInput("one branch sign per bounce parameter expected");
  if (k < 2) throw NonFiniteInput("at least two quadric parameters required");
  const int p = k / 2;
  const int top_sqrt = (k % 2 == 0) ? p - 2 : p - 1;

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (lambdas[i] == lambdas[j]) {
        // repeated row: the determinant vanishes identically
        ConditionReport rep = vacuous_report("lebesgue", precision_bits);
        rep.decision = Decision::satisfied;
        return rep;
      }

  auto build = [&](unsigned bits) {
    PrecisionGuard guard(bits + 32);
    Matrix<BigReal> m(k, k);
    for (int i = 0; i < k; ++i) {
      const BigReal& l = lambdas[i];
      BigReal dv = delta.delta(l);
      if (dv < 0) throw NegativeDiscriminant("discriminant negative at a bounce parameter");
      BigReal sd = sqrt(dv);
      if (!branch_signs.empty() && branch_signs[i] < 0) sd = -sd;
      int col = 0;
      BigReal pw(1);
      for (int t = 0; t <= p; ++t, pw *= l) m.at(i, col++) = pw;
      pw = sd;
      for (int t = 0; t <= top_sqrt; ++t, pw *= l) m.at(i, col++) = pw;
    }
    return m;
  };
  return det_condition("lebesgue", build, precision_bits);
}

ConditionReport corollary1_condition(const PencilDiscriminant& delta,
                                     const BigReal& gamma, int m,
                                     unsigned precision_bits) {
  if (m < 1) throw NonFiniteInput("m must be positive");
  const int N = m + 2;
  auto build = [&](unsigned bits) {
    PrecisionGuard guard(bits + 32);
    Matrix<BigReal> out(2 * m, 2 * m);
    const BigReal centers[2] = {BigReal(0), gamma};
    for (int half = 0; half < 2; ++half) {
      const BigReal& c = centers[half];
      // the two bounce families of the alternating game sit on opposite
      // sheets of y^2 = D(x); consistent branches test a different closure
      TruncatedSeries sq = sqrt_of_poly(delta.delta, c, half == 0 ? 1 : -1, N, bits);
      for (int j = 0; j <= m; ++j) {
        TruncatedSeries xj = poly_as_series(monomial(j), c, N);
        for (int r = 0; r < m; ++r) out.at(half * m + r, j) = xj.coeff(r);
      }
      for (int i = 1; i <= m - 1; ++i) {
        TruncatedSeries col = series_mul(sq, poly_as_series(monomial(i - 1), c, N));
        for (int r = 0; r < m; ++r) out.at(half * m + r, m + i) = col.coeff(r);
      }
    }
    return out;
  };
  return det_condition("corollary1", build, precision_bits);
}

Matrix<BigReal> example1_matrix(const TruncatedSeries& B, const TruncatedSeries& C,
                                const BigReal& g) {
  if (B.order() < 3 || C.order() < 3)
    throw InsufficientOrder("expansions to order 3 required");
  const BigReal &B0 = B.c[0], &B1 = B.c[1], &B2 = B.c[2], &B3 = B.c[3];
  const BigReal &C0 = C.c[0], &C1 = C.c[1], &C2 = C.c[2], &C3 = C.c[3];
  BigReal g2 = g * g, g3 = g2 * g;
  Matrix<BigReal> X(3, 3);
  X.at(0, 0) = -4 * B0 + B1 * g + 4 * C0 + 3 * C1 * g + 2 * C2 * g2 + C3 * g3;
  X.at(0, 1) = -3 * B0 + B1 * g + 3 * C0 + 2 * C1 * g + C2 * g2;
  X.at(0, 2) = -2 * B0 + B1 * g + 2 * C0 + C1 * g;
  // rows are the order-1..3 closure equations at g after eliminating the x^4
  // column against the order-0 row; re-deriving the elimination fixes three
  // coefficients that are often misquoted (5 C1 g, 5 C2 g^2, 2 B2 g^2)
  X.at(1, 0) = -6 * B0 + B2 * g2 + 6 * C0 + 6 * C1 * g + 5 * C2 * g2 + 3 * C3 * g3;
  X.at(1, 1) = -6 * B0 + B1 * g + B2 * g2 + 6 * C0 + 5 * C1 * g + 3 * C2 * g2;
  X.at(1, 2) = -5 * B0 + 2 * B1 * g + B2 * g2 + 5 * C0 + 3 * C1 * g;
  X.at(2, 0) = -4 * B0 + B3 * g3 + 4 * C0 + 4 * C1 * g + 4 * C2 * g2 + 3 * C3 * g3;
  X.at(2, 1) = -4 * B0 + B2 * g2 + B3 * g3 + 4 * C0 + 4 * C1 * g + 3 * C2 * g2;
  X.at(2, 2) = -4 * B0 + B1 * g + 2 * B2 * g2 + B3 * g3 + 4 * C0 + 3 * C1 * g;
  return X;
}

ConditionReport prop1_condition(const ConfocalFamily& fam, double beta1, double beta2,
                                const std::vector<BigReal>& caustics, int m,
                                unsigned precision_bits, bool shifted_denominator) {
  const int d = fam.dim();
  const int cols = m - d + 1;
  if (cols <= 0) return vacuous_report("prop1", precision_bits);
  if (static_cast<int>(caustics.size()) != d - 1)
    throw NonFiniteInput("expected d-1 caustic parameters");

  PrecisionGuard guard(precision_bits + 32);
  std::vector<BigReal> roots;
  for (double v : fam.a) roots.push_back(BigReal(v));
  for (const BigReal& v : caustics) roots.push_back(v);
  Poly<BigReal> P = Poly<BigReal>::from_roots_neg(roots);
  BigReal b1(beta1), b2(beta2);
  if (P(b1) <= 0 || P(b2) <= 0)
    throw BranchPointCenter("both ellipsoid parameters must lie strictly inside a band");

  const int N = m + 4;
  TruncatedSeries B = sqrt_of_poly(P, b1, -1, N, precision_bits);
  TruncatedSeries y = sqrt_of_poly(P, b2, 1, N, precision_bits);

  Matrix<BigReal> mat(m - 1, cols);
  for (int j = 1; j <= cols; ++j) {
    // truncated B-polynomial in (x - beta1), re-expanded around beta2
    std::vector<BigReal> bc(B.c.begin(), B.c.begin() + (d + j - 1));
    Poly<BigReal> bpoly(std::move(bc));
    TruncatedSeries bexp = poly_as_series(bpoly, b2 - b1, N);
    bexp.center = b2;
    TruncatedSeries num = series_sub(y, bexp);
    TruncatedSeries den =
        poly_as_series(monomial(d + j - 1), shifted_denominator ? b2 - b1 : b2, N);
    den.center = b2;
    TruncatedSeries f = series_div(num, den);
    for (int r = 1; r <= m - 1; ++r) mat.at(r - 1, j - 1) = f.coeff(r);
  }
  return rank_condition("prop1", std::move(mat), cols, precision_bits);
}

ConditionReport prop2_condition(const ConfocalFamily& fam, double gamma, double alpha,
                                int k, unsigned precision_bits) {
  if (fam.dim() != 3) throw NonFiniteInput("d = 3 required");
  if (!(fam.a[2] < gamma && gamma < alpha && alpha < fam.a[1]))
    throw HypothesisViolated("requires a_3 < gamma < alpha < a_2");
  const int p = k / 2;
  const int cols = (k % 2 == 0) ? p - 2 : p - 1;
  if (cols <= 0) return vacuous_report("prop2", precision_bits);

  PrecisionGuard guard(precision_bits + 32);
  std::vector<BigReal> roots{BigReal(0)};
  for (double v : fam.a) roots.push_back(BigReal(v));
  roots.push_back(BigReal(alpha));
  Poly<BigReal> P1 = Poly<BigReal>::from_roots_neg(roots);

  const int N = 3 * p;
  TruncatedSeries C = mobius_substitute(P1, BigReal(alpha), BigReal(gamma), N,
                                        precision_bits);
  Matrix<BigReal> mat(p, cols);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < cols; ++c) mat.at(r, c) = C.coeff(p + 1 + r + c);
  return rank_condition("prop2", std::move(mat), cols, precision_bits);
}

}  // namespace poncelet
