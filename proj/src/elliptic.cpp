#include "optpot/elliptic.hpp"

#include <cmath>
#include <sstream>

#include "optpot/errors.hpp"

namespace optpot {

namespace {

double dot_interior(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i : grid.interior_nodes()) acc += a[i] * b[i];
  return acc;
}

}  // namespace

EllipticOperator::EllipticOperator(GridPtr grid, Field m) : grid_(std::move(grid)), m_(std::move(m)) {
  require_same_grid(*grid_, m_);
  diag_.assign(grid_->size(), 1.0);
  for (std::size_t i : grid_->interior_nodes()) {
    if (!(m_[i] >= 0.0)) {
      std::ostringstream msg;
      msg << "potential is negative (" << m_[i] << ") at node " << i;
      throw NegativePotential(msg.str());
    }
    diag_[i] = grid_->stiffness_diagonal(i) + grid_->weight(i) * m_[i];
  }
}

std::vector<double> EllipticOperator::apply(std::span<const double> v) const {
  std::vector<double> out = grid_->apply_stiffness(v);
  for (std::size_t i : grid_->interior_nodes()) out[i] += grid_->weight(i) * m_[i] * v[i];
  return out;
}

std::pair<Field, SolveReport> EllipticOperator::solve(const Field& rhs, double tol,
                                                      const std::optional<Field>& initial) const {
  if (!(tol > 0.0)) throw ArgumentError("solve: tol must be positive");
  const Grid& grid = *grid_;
  require_same_grid(grid, rhs);

  std::vector<double> b(grid.size(), 0.0);
  for (std::size_t i : grid.interior_nodes()) b[i] = grid.weight(i) * rhs[i];

  SolveReport report;
  report.rhs_norm = std::sqrt(dot_interior(grid, b, b));
  Field u(grid_);
  if (report.rhs_norm == 0.0) {
    report.converged = true;
    return {std::move(u), report};
  }
  if (initial) {
    require_same_grid(grid, *initial);
    for (std::size_t i : grid.interior_nodes()) u[i] = (*initial)[i];
  }

  std::vector<double> r = b;
  {
    const std::vector<double> au = apply(u.values());
    for (std::size_t i : grid.interior_nodes()) r[i] -= au[i];
  }
  std::vector<double> z(grid.size(), 0.0);
  std::vector<double> p(grid.size(), 0.0);
  for (std::size_t i : grid.interior_nodes()) p[i] = z[i] = r[i] / diag_[i];

  const double target = tol * report.rhs_norm;
  const long cap = 20L * grid.n() * grid.n();
  double rz = dot_interior(grid, r, z);
  double rnorm = std::sqrt(dot_interior(grid, r, r));
  long it = 0;
  while (rnorm > target) {
    if (it >= cap) {
      std::ostringstream msg;
      msg << "conjugate gradient stalled at residual " << rnorm << " after " << it << " iterations";
      throw NonConvergence(msg.str());
    }
    const std::vector<double> ap = apply(p);
    const double step = rz / dot_interior(grid, p, ap);
    for (std::size_t i : grid.interior_nodes()) {
      u[i] += step * p[i];
      r[i] -= step * ap[i];
      z[i] = r[i] / diag_[i];
    }
    const double rz_next = dot_interior(grid, r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i : grid.interior_nodes()) p[i] = z[i] + beta * p[i];
    rnorm = std::sqrt(dot_interior(grid, r, r));
    ++it;
  }
  report.iterations = static_cast<int>(it);
  report.residual_norm = rnorm;
  report.converged = true;
  return {std::move(u), report};
}

StateSolution solve_state(const GridPtr& grid, const Field& m, const Field& f, double tol,
                          const std::optional<Field>& initial) {
  auto [u, report] = EllipticOperator(grid, m).solve(f, tol, initial);
  return {std::move(u), report};
}

StateSolution solve_adjoint(const GridPtr& grid, const Field& m, const CostIntegrand& j, const Field& u,
                            double tol, const std::optional<Field>& initial) {
  require_same_grid(*grid, u);
  Field rhs(grid);
  for (std::size_t i : grid->interior_nodes()) rhs[i] = j.deriv(i, u[i]);
  auto [z, report] = EllipticOperator(grid, m).solve(rhs, tol, initial);
  return {std::move(z), report};
}

}  // namespace optpot
