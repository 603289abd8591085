#include "poncelet/confocal.hpp"

namespace poncelet {

EllipticCoords elliptic_coordinates(const ConfocalFamily& fam,
                                    const std::vector<double>& point) {
  for (double v : point)
    if (!std::isfinite(v)) throw NonFiniteInput("point has non-finite coordinate");
  return elliptic_coordinates_t<double>(fam.a, point);
}

std::vector<double> cartesian_from_elliptic(const ConfocalFamily& fam,
                                            const EllipticCoords& coords,
                                            const std::vector<int>& signs) {
  return cartesian_from_elliptic_t<double>(fam.a, coords, signs);
}

CausticSet caustic_parameters(const ConfocalFamily& fam, const std::vector<double>& base,
                              const std::vector<double>& direction) {
  return caustic_parameters_t<double>(fam.a, base, direction);
}

AdmissiblePolynomial admissibility_polynomial(const ConfocalFamily& fam,
                                              const CausticSet& caustics) {
  AdmissiblePolynomial r;
  r.roots = fam.a;
  r.roots.insert(r.roots.end(), caustics.begin(), caustics.end());
  r.poly = Poly<double>::from_roots_neg(r.roots);
  std::sort(r.roots.begin(), r.roots.end());
  return r;
}

bool check_lemma1(const EllipticCoords& coords, const AdmissiblePolynomial& poly,
                  double slack) {
  for (double lam : coords)
    if (poly.poly(lam) < -slack) return false;
  return true;
}

}  // namespace poncelet
