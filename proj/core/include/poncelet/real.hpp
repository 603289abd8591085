#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>

namespace poncelet {

// Arbitrary-precision real with runtime precision.  Precision is controlled
// through the thread-global default; scope it with PrecisionGuard.
using BigReal = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(bits * 0.3010299957) + 4;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : saved_(BigReal::default_precision()) {
    BigReal::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() { BigReal::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

// 2^e at the current default precision.
inline BigReal pow2(long e) {
  return boost::multiprecision::ldexp(BigReal(1), static_cast<int>(e));
}

// Machine epsilon of the scalar type at its current working precision.
template <class T>
T scalar_eps();

template <>
inline double scalar_eps<double>() {
  return std::numeric_limits<double>::epsilon();
}

template <>
inline BigReal scalar_eps<BigReal>() {
  long bits = static_cast<long>(BigReal::default_precision() * 3.3219280949) - 4;
  return pow2(-bits);
}

template <class T>
int bisection_iterations();

template <>
inline int bisection_iterations<double>() { return 90; }

template <>
inline int bisection_iterations<BigReal>() {
  return static_cast<int>(BigReal::default_precision() * 3.33) + 64;
}

using std::abs;
using std::sqrt;
using std::isfinite;
using std::sin;
using std::cos;
using std::atan2;
using std::floor;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;
using boost::multiprecision::isfinite;
using boost::multiprecision::sin;
using boost::multiprecision::cos;
using boost::multiprecision::atan2;
using boost::multiprecision::floor;

}  // namespace poncelet
