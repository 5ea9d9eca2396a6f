#pragma once

#include <optional>

#include "optpot/cost.hpp"
#include "optpot/grid.hpp"

namespace optpot {

struct SolveReport {
  int iterations = 0;
  /// Euclidean norm of the final residual of the assembled system.
  double residual_norm = 0.0;
  /// Norm of the assembled right-hand side W f.
  double rhs_norm = 0.0;
  bool converged = false;
};

/// The operator -Delta + m with homogeneous Dirichlet data, assembled as
/// K + W diag(m). Symmetric, and positive definite for m >= 0.
class EllipticOperator {
 public:
  /// Throws NegativePotential if m < 0 at an interior node.
  EllipticOperator(GridPtr grid, Field m);

  const Grid& grid() const { return *grid_; }
  const Field& potential() const { return m_; }

  /// (K + W m) v on interior nodes, 0 elsewhere.
  std::vector<double> apply(std::span<const double> v) const;

  /// Jacobi-preconditioned conjugate gradient for (K + W m) u = W rhs.
  /// Stops at ||r|| <= tol ||W rhs||; throws NonConvergence after 20 n^2
  /// iterations.
  std::pair<Field, SolveReport> solve(const Field& rhs, double tol,
                                      const std::optional<Field>& initial = std::nullopt) const;

 private:
  GridPtr grid_;
  Field m_;
  std::vector<double> diag_;
};

struct StateSolution {
  Field u;
  SolveReport report;
};

StateSolution solve_state(const GridPtr& grid, const Field& m, const Field& f, double tol = 1e-10,
                          const std::optional<Field>& initial = std::nullopt);

/// Same operator with right-hand side d/ds j(x, u(x)).
StateSolution solve_adjoint(const GridPtr& grid, const Field& m, const CostIntegrand& j, const Field& u,
                            double tol = 1e-10, const std::optional<Field>& initial = std::nullopt);

}  // namespace optpot
