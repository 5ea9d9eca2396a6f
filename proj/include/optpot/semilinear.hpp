#pragma once

#include <optional>
#include <vector>

#include "optpot/convex.hpp"
#include "optpot/grid.hpp"

namespace optpot {

struct SemilinearOptions {
  /// Gauss-Seidel stops once a symmetric sweep lowers the energy by less than
  /// tol |E| and moves no node by more than 1e-13 (1 + |u|_inf).
  double tol = 1e-14;
  int max_sweeps = 200000;
  /// Run ADMM (CG + nodal resolvents) before the sweeps. Without it the
  /// sweeps alone need O(n^2) iterations.
  bool warm_start = true;
  int max_admm_iterations = 5000;
  double admm_penalty = 10.0;
  std::optional<Field> initial;
};

/// The pair (u, w) with -Delta_h u + w = f and g-(u) <= w <= g+(u).
struct SemilinearSolution {
  Field u;
  Field w;
  double energy = 0.0;
  /// max over interior nodes of dist(w, [g-(u), g+(u)]).
  double selection_violation = 0.0;
  int sweeps = 0;
  int admm_iterations = 0;
  /// Energy after each Gauss-Seidel sweep, starting with the initial energy.
  std::vector<double> energy_history;
};

/// Discrete energy sum W [1/2 |grad v|^2 + G(v) - f v].
double semilinear_energy(const Grid& grid, const MonotoneGraph& graph, const Field& f, const Field& v);

/// w := f + Delta_h u on interior nodes, 0 elsewhere.
Field semilinear_defect(const Grid& grid, const Field& f, const Field& u);

SemilinearSolution solve_semilinear(const GridPtr& grid, const MonotoneGraph& graph, const Field& f,
                                    const SemilinearOptions& options = {});

struct ContractionCheck {
  double lhs = 0.0;  // int |w1 - w2|
  double rhs = 0.0;  // int |f1 - f2|
  Field u1;
  Field u2;
  Field w1;
  Field w2;
};

ContractionCheck check_l1_contraction(const GridPtr& grid, const MonotoneGraph& graph, const Field& f1,
                                      const Field& f2, const SemilinearOptions& options = {});

struct BvDiagnostic {
  double tv_w = 0.0;
  double tv_f = 0.0;
  /// tv_w / (tv_f + ||f||_1 + |g+(0)|).
  double ratio = 0.0;
};

BvDiagnostic bv_diagnostic(const Grid& grid, const MonotoneGraph& graph, const SemilinearSolution& solution,
                           const Field& f);

}  // namespace optpot
