#pragma once

#include <vector>

#include "poncelet/errors.hpp"
#include "poncelet/poly.hpp"
#include "poncelet/real.hpp"

namespace poncelet {

// Finite-order power series around `center` with arbitrary-precision
// coefficients.  Arithmetic is closed at fixed order: terms beyond N drop.
struct TruncatedSeries {
  BigReal center;
  std::vector<BigReal> c;  // c[0] .. c[N]
  unsigned precision_bits = 256;

  int order() const { return static_cast<int>(c.size()) - 1; }
  const BigReal& coeff(int i) const { return c[static_cast<size_t>(i)]; }

  // Series value at center + u (plain Horner; for oracle-style checks).
  BigReal eval_offset(const BigReal& u) const {
    BigReal r = c.back();
    for (int i = order() - 1; i >= 0; --i) r = r * u + c[i];
    return r;
  }
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b);

// Truncated series of sign * sqrt(P(center + u)) up to order N at precision p.
// Requires P(center) > 0.
TruncatedSeries sqrt_of_poly(const Poly<BigReal>& P, const BigReal& center, int sign,
                             int N, unsigned precision_bits);

// Expansion of y = sqrt(P(x)) in the variable u = 1/(alpha - x) - 1/(alpha - gamma),
// i.e. the Taylor series with respect to x~ = 1/(alpha - x) around x = gamma.
// Positive branch: constant term sqrt(P(gamma)).
TruncatedSeries mobius_substitute(const Poly<BigReal>& P, const BigReal& alpha,
                                  const BigReal& gamma, int N, unsigned precision_bits);

}  // namespace poncelet
