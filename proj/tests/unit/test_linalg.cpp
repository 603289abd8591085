#include <cmath>

#include "doctest.h"
#include "poncelet/linalg.hpp"

using namespace poncelet;

namespace {

Matrix<double> hilbert(int n) {
  Matrix<double> h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.at(i, j) = 1.0 / (i + j + 1);
  return h;
}

Matrix<BigReal> hilbert_hp(int n) {
  Matrix<BigReal> h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.at(i, j) = BigReal(1) / (i + j + 1);
  return h;
}

}  // namespace

TEST_CASE("determinant of a fixed 3x3 matrix") {
  Matrix<double> m(3, 3);
  double v[3][3] = {{2, -1, 0}, {1, 3, 4}, {0, 5, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = v[i][j];
  // cofactor expansion by hand: 2*(3-20) + 1*(1-0) = -33
  CHECK(determinant(m) == doctest::Approx(-33.0).epsilon(1e-14));
}

TEST_CASE("determinant of a singular matrix is zero") {
  Matrix<double> m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = i + 2 * j;  // rank 2
  CHECK(std::abs(determinant(m)) < 1e-13);
}

TEST_CASE("singular values of a diagonal-by-rotation matrix") {
  // A = R * diag(5, 2) with R a rotation: singular values are 5 and 2
  double c = std::cos(0.6), s = std::sin(0.6);
  Matrix<double> m(2, 2);
  m.at(0, 0) = 5 * c;
  m.at(0, 1) = -2 * s;
  m.at(1, 0) = 5 * s;
  m.at(1, 1) = 2 * c;
  std::vector<double> sv = singular_values(m);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("singular values detect a rank-deficient product") {
  // 5x6 = (5x3)(3x6) has rank 3
  Matrix<double> a(5, 3), b(3, 6);
  uint64_t st = 0x9e3779b97f4a7c15ull;
  auto uni = [&st]() {
    st ^= st << 13;
    st ^= st >> 7;
    st ^= st << 17;
    return static_cast<double>(st >> 11) * 0x1.0p-53 * 2 - 1;
  };
  for (auto& v : a.data) v = uni();
  for (auto& v : b.data) v = uni();
  Matrix<double> m(5, 6);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 6; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
      m.at(i, j) = s;
    }
  std::vector<double> sv = singular_values(m);
  REQUIRE(sv.size() == 5);
  CHECK(sv[2] > 1e-8);
  CHECK(sv[3] < 1e-12 * sv[0]);
  CHECK(sv[4] < 1e-12 * sv[0]);
}

TEST_CASE("rank decision on an exactly deficient matrix is certified") {
  PrecisionGuard guard(320);
  Matrix<BigReal> m(4, 5);
  // rows 2 and 3 are combinations of rows 0 and 1
  for (int j = 0; j < 5; ++j) {
    m.at(0, j) = BigReal(j + 1);
    m.at(1, j) = BigReal((j * j) % 7);
    m.at(2, j) = m.at(0, j) * 2 - m.at(1, j);
    m.at(3, j) = m.at(0, j) + m.at(1, j) * 3;
  }
  RankDecision rd = rank_decision(m, 128);
  CHECK(rd.rank == 2);
  CHECK(rd.certified);
  RankDecision rd2 = rank_decision(m, 256);
  CHECK(rd2.rank == 2);
  CHECK(rd2.certified);
}

TEST_CASE("ill-conditioned full-rank matrix needs precision to certify") {
  PrecisionGuard guard(640);
  Matrix<BigReal> h = hilbert_hp(12);
  // sigma_min/sigma_max of the 12x12 Hilbert matrix is ~ 6e-17, which
  // straddles the 64-bit rank threshold 2^-32
  RankDecision low = rank_decision(h, 64);
  RankDecision high = rank_decision(h, 256);
  CHECK_FALSE(low.certified);
  CHECK(high.certified);
  CHECK(high.rank == 12);
}

TEST_CASE("double and high precision determinants agree on a benign matrix") {
  Matrix<double> hd = hilbert(6);
  Matrix<BigReal> hb = hilbert_hp(6);
  PrecisionGuard guard(256);
  BigReal dhp = determinant(hb);
  double dd = determinant(hd);
  // double LU loses ~cond(H6) ~ 1e7 of accuracy relative to the exact value
  CHECK(std::abs(dd - static_cast<double>(dhp)) < 1e-8 * std::abs(dd));
}
