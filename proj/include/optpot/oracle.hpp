#pragma once

#include "optpot/convex.hpp"
#include "optpot/cost.hpp"
#include "optpot/grid.hpp"

namespace optpot {

/// Analytic optimum of the radial tracking problem j = 1/2 |s - s0|^2, f = 1
/// on the unit disc with no penalty on m (k = 0). The optimal potential is
/// the measure (1/s0) on {|x| < a} plus ring_weight times arc length on
/// {|x| = a}.
struct RadialOptimal {
  double s0 = 0.0;
  double a = 0.0;
  double ring_weight = 0.0;
  double bulk_density = 0.0;
  /// (1/s0) pi a^2 + ring_weight 2 pi a.
  double total_mass = 0.0;
};

/// F(a) = log a int_a^1 r (4 s0 - 1 + r^2) log r dr - (4 s0 - 1 + a^2) int_a^1 r log^2 r dr,
/// evaluated with closed-form antiderivatives.
double example1_characteristic(double s0, double a);

/// Root a of the characteristic equation among radii with
/// 4 s0 - 1 + a^2 < 2 a^2 log a. Throws DomainError unless 0 < s0 < 1/4 and
/// NoBracket when the scan finds no admissible sign change.
double example1_radius(double s0);

double example1_state(double s0, double a, double r);
double example1_ring_weight(double s0, double a);
RadialOptimal example1_solution(double s0);

/// Exhaustive minimum of the reduced cost over m in {alpha, beta} (levels = 2)
/// or {alpha, midpoint, beta} (levels = 3) per interior node of a radial grid
/// with at most 9 interior nodes.
Field brute_force_boxlaw(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                         int levels);

}  // namespace optpot
