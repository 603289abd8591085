#include "poncelet/linalg.hpp"

namespace poncelet {

namespace {

// Rank at one working precision.  Entries are re-rounded to the target
// precision so both passes start from the same values.
std::pair<int, double> rank_at(const Matrix<BigReal>& m, unsigned bits) {
  PrecisionGuard guard(bits);
  Matrix<BigReal> a(m.rows, m.cols);
  for (size_t i = 0; i < m.data.size(); ++i) a.data[i] = BigReal(m.data[i]);
  std::vector<BigReal> sv = singular_values(a);
  if (sv.empty() || sv.front() == 0) return {0, 0.0};
  BigReal thresh = pow2(-static_cast<long>(bits / 2)) * sv.front();
  int rank = 0;
  while (rank < static_cast<int>(sv.size()) && sv[rank] > thresh) ++rank;
  double resid = 0.0;
  if (rank < static_cast<int>(sv.size()))
    resid = static_cast<double>(sv[rank] / sv.front());
  return {rank, resid};
}

}  // namespace

RankDecision rank_decision(const Matrix<BigReal>& m, unsigned precision_bits) {
  auto [r1, resid1] = rank_at(m, precision_bits);
  auto [r2, resid2] = rank_at(m, 2 * precision_bits);
  RankDecision d;
  d.rank = r1;
  d.residual = resid1;
  d.certified = (r1 == r2);
  return d;
}

}  // namespace poncelet
