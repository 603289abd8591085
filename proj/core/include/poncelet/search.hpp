#pragma once

#include <optional>
#include <vector>

#include "poncelet/dynamics.hpp"
#include "poncelet/real.hpp"

namespace poncelet {

// d = 2 billiard in the ellipse Q_0.

struct D2Closure {
  double caustic = 0;
  double vertex_error = 0;  // |x_n - x_0| after one period
  int period = 0;
  std::vector<std::vector<double>> vertices;
};

// Caustic whose trajectories close after `period` bounces winding once around
// the center, located by bisection of the boundary-angle defect.
D2Closure d2_find_caustic_for_period(const ConfocalFamily& fam, int period);

// Direction at p (on the boundary Q_0) tangent to the caustic Q_alpha,
// oriented counterclockwise.
std::vector<double> d2_direction_for_caustic(const ConfocalFamily& fam,
                                             const std::vector<double>& p, double alpha);

// Caustic of the cyclic ordered game visiting the given quadrics with the
// given reflection sides that closes after `steps` bounces winding once.
// The caustic is polished at the given precision.
BigReal d2_ordered_game_caustic(const ConfocalFamily& fam,
                                const std::vector<double>& betas,
                                const std::vector<int>& sides, int steps,
                                unsigned precision_bits);

// Alternating game between Q_0 and Q_gamma closing after 2m bounces (m on
// each), winding once.
BigReal d2_game_caustic(const ConfocalFamily& fam, double gamma, int m,
                        unsigned precision_bits);

// d = 3 closed orbits inside Q_0.

struct D3Closure {
  std::vector<double> start, direction;
  int period = 0;
  double defect = 0;
  CausticSet caustics;
};

// Direction-sphere grid scan plus Gauss-Newton refinement at a fixed boundary
// start; rejects planar or caustic-degenerate orbits.
std::optional<D3Closure> d3_find_closed_orbit(const ConfocalFamily& fam,
                                              const std::vector<int>& periods,
                                              int grid, double defect_tol);

struct D3GameClosure {
  std::vector<double> start, direction;
  int m = 0;
  double defect = 0;
  std::vector<BigReal> start_hp, direction_hp;  // polished at precision_bits
  std::vector<BigReal> caustics_hp;
  double defect_hp = 0;  // closure defect of the polished orbit
};

// Alternating game between the ellipsoids Q_0 and Q_gamma with m bounces on
// each; the double-precision solution is polished by high-precision
// Gauss-Newton over the two direction parameters.
std::optional<D3GameClosure> d3_find_game_closure(const ConfocalFamily& fam, double gamma,
                                                  int m, int grid,
                                                  unsigned precision_bits);

}  // namespace poncelet
