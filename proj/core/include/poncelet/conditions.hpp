#pragma once

#include <string>
#include <vector>

#include "poncelet/confocal.hpp"
#include "poncelet/linalg.hpp"
#include "poncelet/series.hpp"

namespace poncelet {

// Discriminant cubic of a conic pencil C + x*Gamma.
struct PencilDiscriminant {
  Poly<BigReal> delta;  // degree <= 3, not identically zero
};

enum class Decision { satisfied, not_satisfied, vacuous };

const char* decision_name(Decision d);

struct ConditionReport {
  std::string condition;
  Matrix<BigReal> matrix;
  Decision decision = Decision::not_satisfied;
  double residual = 0;  // Hadamard-scaled |det|, or sigma_{r+1}/sigma_max
  bool certified = false;
  unsigned precision_bits = 0;
  int rank = -1;  // -1 for determinant-style conditions
};

// k x k determinant test with rows (1, l, ..., l^p, sqrt(D(l)), ...,
// l^{p-2} sqrt(D(l))) for k = 2p, last power p-1 for k = 2p+1.
// Two equal lambdas give a repeated row: satisfied with residual 0.
// `branch_signs` picks the sheet of sqrt(D) per bounce (empty: all positive);
// the sign pattern has to match the reflection pattern of the trajectory.
ConditionReport lebesgue_condition(const PencilDiscriminant& delta,
                                   const std::vector<BigReal>& lambdas,
                                   unsigned precision_bits,
                                   const std::vector<int>& branch_signs = {});

// 2m x 2m determinant of Taylor coefficients (orders 0..m-1 at centers 0 and
// gamma) of f_j = x^j (0 <= j <= m) and f_{m+i} = x^{i-1} sqrt(D(x))
// (1 <= i <= m-1).  Closure test for the alternating game between the conics
// at pencil parameters 0 and gamma.
ConditionReport corollary1_condition(const PencilDiscriminant& delta,
                                     const BigReal& gamma, int m,
                                     unsigned precision_bits);

// Explicit 3x3 matrix of the m = 4 alternating closure test, assembled from
// the sqrt-discriminant expansions B (center gamma) and C (center 0).
Matrix<BigReal> example1_matrix(const TruncatedSeries& B, const TruncatedSeries& C,
                                const BigReal& gamma);

// Rank test for a 2m-periodic trajectory between the ellipsoids Q_{beta1} and
// Q_{beta2} with the given caustics, m bounces on each.  The test matrix holds
// Taylor coefficients (orders 1..m-1 at P_{beta2}) of
//   f_j = (y - B_0 - ... - B_{d+j-2} (x-beta1)^{d+j-2}) / x^{d+j-1}
// where B is the expansion of the negative y-branch at beta1.  Satisfied iff
// numerical rank < m-d+1; vacuous for m < d.
// `shifted_denominator` replaces x^{d+j-1} by (x-beta1)^{d+j-1}; the default
// follows the formula above literally.
// Caustic parameters should carry precision matching `precision_bits`: the
// rank drop is only visible when the caustics solve the closure to well below
// the rank threshold.
ConditionReport prop1_condition(const ConfocalFamily& fam, double beta1, double beta2,
                                const std::vector<BigReal>& caustics, int m,
                                unsigned precision_bits,
                                bool shifted_denominator = false);

// Rank test for a k-periodic trajectory of the billiard on the ellipsoid Q_0
// in R^3 with boundary Q_gamma and caustic Q_alpha, a_3 < gamma < alpha < a_2.
// The Hankel block is built from coefficients C_i of the expansion of y on
// y^2 = P_1(x) in the variable 1/(alpha - x) around P_gamma; rows start at
// C_{p+1}..C_{2p} with rank bound p-2 for k = 2p and p-1 for k = 2p+1.
ConditionReport prop2_condition(const ConfocalFamily& fam, double gamma, double alpha,
                                int k, unsigned precision_bits);

}  // namespace poncelet
