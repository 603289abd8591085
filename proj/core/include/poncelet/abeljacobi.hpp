#pragma once

#include <string>
#include <utility>
#include <vector>

#include "poncelet/confocal.hpp"
#include "poncelet/dynamics.hpp"

namespace poncelet {

// Real hyperelliptic curve y^2 = P(x) with all branch values real.
struct HyperellipticCurve {
  Poly<double> poly;
  std::vector<double> branch;  // ascending, distinct
  int genus = 0;

  // Maximal intervals where P >= 0, ascending; first may extend to -infinity.
  std::vector<std::pair<double, double>> positive_bands() const;
};

// y^2 = (a_1-x)...(a_d-x)(alpha_1-x)...(alpha_{d-1}-x)
HyperellipticCurve curve_gamma(const ConfocalFamily& fam, const CausticSet& caustics);

// y^2 = -x (a_1-x)...(a_d-x)(alpha_1-x)...(alpha_{d-2}-x)
HyperellipticCurve curve_gamma1(const ConfocalFamily& fam, const CausticSet& caustics);

HyperellipticCurve curve_from_branch(std::vector<double> roots, double lead_coeff);

struct CurvePoint {
  double x = 0;
  int sheet = 1;  // sign of y; irrelevant at branch values
};

struct AbelVector {
  std::vector<double> v;
  bool reduced = false;  // leading component exactly 0 by construction
};

struct PeriodLattice {
  std::vector<std::vector<double>> gens;  // length-genus vectors
  int genus = 0;
  double shortest = 0;  // smallest generator norm
  std::vector<std::string> notes;
};

// Integral of x^j dx / (sheet * sqrt(P)) over [x_from, x_to], which must lie
// in the closure of a single band where P >= 0.  Endpoints may be branch
// values; x_from = -infinity is allowed on the unbounded band.
double incomplete_integral(const HyperellipticCurve& curve, int j, double x_from,
                           double x_to, int sheet = 1);

// Real part of the same integral when the interval crosses sign changes of P:
// contributions over P < 0 are purely imaginary and drop out.
double real_part_integral(const HyperellipticCurve& curve, int j, double x_from,
                          double x_to, int sheet = 1);

PeriodLattice real_period_lattice(const HyperellipticCurve& curve,
                                  bool allow_high_genus = false);

struct Membership {
  bool accepted = false;
  std::vector<long> coeffs;
  double residual = 0;
  double threshold = 0;
};

Membership lattice_membership(const PeriodLattice& lattice, const AbelVector& v,
                              long max_coeff,
                              const std::vector<std::vector<double>>& extra_gens = {});

struct CheckReport {
  bool accepted = false;
  std::vector<long> coeffs;
  double residual = 0;
  double threshold = 0;
  std::vector<std::string> notes;
};

CheckReport theorem1_check(const HyperellipticCurve& curve,
                           const std::vector<std::pair<double, double>>& ranges,
                           const WindingCounts& counts, long max_coeff);

CheckReport theorem2_check(const HyperellipticCurve& curve,
                           const std::vector<double>& betas, const Signature& sig,
                           const CausticSet& caustics, long max_coeff);

CheckReport theorem3_check(const HyperellipticCurve& curve,
                           const std::vector<std::pair<double, double>>& ranges,
                           const WindingCounts& counts, long max_coeff);

CheckReport theorem4_check(const HyperellipticCurve& curve,
                           const std::vector<double>& betas, const Signature& sig,
                           const CausticSet& caustics, long max_coeff);

// D_s as integer multiplicities of the branch points P_{mu'}, P_{mu''}.
struct DivisorValue {
  int c_mu_prime = 0;
  int c_mu_double_prime = 0;
};

// Adjacent pair of S = branch values with all betas inside [mu', mu''].
std::pair<double, double> find_mu_pair(const std::vector<double>& S,
                                       const std::vector<double>& betas);

std::vector<DivisorValue> divisor_table(const Signature& sig,
                                        const std::vector<double>& betas,
                                        double mu_prime, double mu_double_prime);

}  // namespace poncelet
