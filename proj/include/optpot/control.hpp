#pragma once

#include <string>
#include <vector>

#include "optpot/convex.hpp"
#include "optpot/cost.hpp"
#include "optpot/elliptic.hpp"
#include "optpot/grid.hpp"
#include "optpot/semilinear.hpp"

namespace optpot {

struct OptimizeOptions {
  /// Stop once |I(m_j) - I(m_{j-1})| / |I(m_0)| < tol.
  double tol = 1e-6;
  int max_iter = 2000;
  /// Initial step of each backtracking search. For the box laws, whose
  /// directions are signs, it is measured in units of beta - alpha.
  double eps0 = 1.0;
  double backtrack = 0.5;
  int max_halvings = 40;
  double solver_tol = 1e-10;
  /// Use sgn(k - u z) for BoxPlusLinear with p = 1 instead of the gradient
  /// sign sgn(u z - k).
  bool paper_sign_third_example = false;
};

struct OptimizeReport {
  Field m;
  Field u;
  Field z;
  std::vector<double> cost_history;
  int iterations = 0;
  double optimality_residual = 0.0;
  double l1_m = 0.0;
  double tv_m = 0.0;
  double bangbang_fraction = 0.0;
  bool converged = false;
  /// "tolerance", "stationary" (no descent found / zero direction) or "max_iter".
  std::string stop_reason;
};

struct CostBreakdown {
  double total = 0.0;
  double state_term = 0.0;
  double penalty_term = 0.0;
  Field u;
  SolveReport report;
};

/// I(m) = int j(x, u(m)) + int psi(m), with the parts and the state.
CostBreakdown evaluate_cost(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                            const Field& m, double solver_tol = 1e-10,
                            const std::optional<Field>& initial = std::nullopt);

double reduced_cost(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                    const Field& m, double solver_tol = 1e-10);

/// Negative formal gradient u z - psi'(m): L2-normalized for the smooth laws,
/// its sign for the box laws. Throws ZeroDirection at stationary points.
Field descent_direction(const PotentialLaw& law, const Field& m, const Field& u, const Field& z,
                        bool paper_sign_third_example = false);

/// Midpoint of [alpha, beta] for the box laws, 0 for Power; 0 off the interior.
Field default_initial_potential(const GridPtr& grid, const PotentialLaw& law);

/// Projected gradient descent with backtracking.
OptimizeReport optimize(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                        const Field& m0, const OptimizeOptions& options = {});

/// int dist(m, [h-(u z), h(u z)]) over the interior.
double optimality_residual(const PotentialLaw& law, const Field& m, const Field& u, const Field& z,
                           const Grid& grid);

struct AuxiliarySolution {
  Field u;
  Field m;
  SemilinearSolution semilinear;
};

/// Energy costs only: solves -Delta u + u h(u^2) ∋ f and recovers m = h(u^2).
AuxiliarySolution solve_via_auxiliary(const GridPtr& grid, const PotentialLaw& law, const Field& f,
                                      const SemilinearOptions& options = {});

}  // namespace optpot
