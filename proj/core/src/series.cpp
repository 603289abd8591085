#include "poncelet/series.hpp"

namespace poncelet {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.center != b.center || a.order() != b.order())
    throw CenterMismatch("series have different centers or orders");
}

std::vector<BigReal> mul_coeffs(const std::vector<BigReal>& a,
                                const std::vector<BigReal>& b, int N) {
  std::vector<BigReal> r(static_cast<size_t>(N) + 1, BigReal(0));
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

std::vector<BigReal> div_coeffs(const std::vector<BigReal>& a,
                                const std::vector<BigReal>& b, int N) {
  if (b[0] == 0) throw DivisionByZeroConstantTerm();
  std::vector<BigReal> q(static_cast<size_t>(N) + 1, BigReal(0));
  for (int n = 0; n <= N; ++n) {
    BigReal s = (n < static_cast<int>(a.size())) ? a[n] : BigReal(0);
    for (int k = 0; k < n; ++k)
      if (n - k < static_cast<int>(b.size())) s -= q[k] * b[n - k];
    q[n] = s / b[0];
  }
  return q;
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries r = a;
  r.c = mul_coeffs(a.c, b.c, a.order());
  return r;
}

TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries r = a;
  r.c = div_coeffs(a.c, b.c, a.order());
  return r;
}

TruncatedSeries sqrt_of_poly(const Poly<BigReal>& P, const BigReal& center, int sign,
                             int N, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits + 32);
  Poly<BigReal> S = P.shifted(center);  // u -> P(center + u)
  if (S.c[0] <= scalar_eps<BigReal>() * 16)
    throw BranchPointCenter("P(center) must be strictly positive");

  // Newton iteration y <- (y + S/y)/2, attained order doubles each step.
  std::vector<BigReal> y{sqrt(S.c[0])};
  if (sign < 0) y[0] = -y[0];
  std::vector<BigReal> s(S.c.begin(), S.c.end());
  s.resize(static_cast<size_t>(N) + 1, BigReal(0));
  int order = 0;
  while (order < N) {
    order = std::min(2 * order + 1, N);
    std::vector<BigReal> yk = y;
    yk.resize(static_cast<size_t>(order) + 1, BigReal(0));
    std::vector<BigReal> sv(s.begin(), s.begin() + order + 1);
    std::vector<BigReal> q = div_coeffs(sv, yk, order);
    for (int i = 0; i <= order; ++i) q[i] = (q[i] + yk[i]) / 2;
    y = std::move(q);
  }
  TruncatedSeries r;
  r.center = center;
  r.c = std::move(y);
  r.precision_bits = precision_bits;
  return r;
}

TruncatedSeries mobius_substitute(const Poly<BigReal>& P, const BigReal& alpha,
                                  const BigReal& gamma, int N, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits + 32);
  if (alpha == gamma) throw SubstitutionPole("alpha == gamma");
  BigReal t0 = 1 / (alpha - gamma);  // expansion center in x~

  // x(u) = alpha - 1/(t0 + u) as a series in u:
  // 1/(t0+u) = (1/t0) * sum (-u/t0)^n
  std::vector<BigReal> inv(static_cast<size_t>(N) + 1);
  BigReal f = 1 / t0;
  for (int n = 0; n <= N; ++n) {
    inv[n] = f;
    f *= -1 / t0;
  }
  std::vector<BigReal> xs(static_cast<size_t>(N) + 1, BigReal(0));
  xs[0] = alpha;
  for (int n = 0; n <= N; ++n) xs[n] -= inv[n];

  // Horner evaluation of P at the series x(u)
  std::vector<BigReal> acc{BigReal(P.c.back())};
  for (int i = P.degree() - 1; i >= 0; --i) {
    acc = mul_coeffs(acc, xs, N);
    acc[0] += P.c[i];
  }
  acc.resize(static_cast<size_t>(N) + 1, BigReal(0));
  if (acc[0] <= 0) throw BranchPointCenter("P(gamma) must be strictly positive");

  // square root of the composed series, positive branch
  std::vector<BigReal> y{sqrt(acc[0])};
  int order = 0;
  while (order < N) {
    order = std::min(2 * order + 1, N);
    std::vector<BigReal> yk = y;
    yk.resize(static_cast<size_t>(order) + 1, BigReal(0));
    std::vector<BigReal> av(acc.begin(), acc.begin() + order + 1);
    std::vector<BigReal> q = div_coeffs(av, yk, order);
    for (int i = 0; i <= order; ++i) q[i] = (q[i] + yk[i]) / 2;
    y = std::move(q);
  }
  TruncatedSeries r;
  r.center = t0;  // center in the x~ variable
  r.c = std::move(y);
  r.precision_bits = precision_bits;
  return r;
}

}  // namespace poncelet
