#include "optpot/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "optpot/elliptic.hpp"
#include "optpot/errors.hpp"

namespace optpot {

namespace {

double max_abs(const Field& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

// Exact minimization of the energy in node i with its neighbours frozen:
// K_ii v + W_i g(v) ∋ W_i f_i - sum_j K_ij v_j.
double relax_node(const Grid& grid, const MonotoneGraph& graph, const Field& f, const Field& u, std::size_t i) {
  double off = 0.0;
  for (const auto& e : grid.stiffness_row(i)) off += e.value * u[e.col];
  const double kii = grid.stiffness_diagonal(i);
  const double lambda = grid.weight(i) / kii;
  const double t = (grid.weight(i) * f[i] - off) / kii;
  return resolvent(graph, lambda, t, 0.0);
}

// ADMM on min 1/2 u'Ku - (Wf)'u + sum W G(y) subject to u = y, with the
// penalty rebalanced against the primal and dual residuals.
Field admm_warm_start(const GridPtr& grid, const MonotoneGraph& graph, const Field& f, Field y,
                      const SemilinearOptions& options, int& iterations) {
  double rho = options.admm_penalty;
  Field mu(grid);
  Field rhs(grid);
  std::optional<Field> u_prev;
  double inner_tol = 1e-8;
  iterations = 0;
  for (int it = 0; it < options.max_admm_iterations; ++it) {
    for (std::size_t i : grid->interior_nodes()) rhs[i] = f[i] + rho * (y[i] - mu[i]);
    Field u = solve_state(grid, Field(grid, rho), rhs, inner_tol, u_prev).u;
    double change = 0.0;
    double gap = 0.0;
    for (std::size_t i : grid->interior_nodes()) {
      const double y_next = resolvent(graph, 1.0 / rho, u[i] + mu[i], 0.0);
      change = std::max(change, std::abs(y_next - y[i]));
      y[i] = y_next;
      mu[i] += u[i] - y[i];
      gap = std::max(gap, std::abs(u[i] - y[i]));
    }
    u_prev = std::move(u);
    iterations = it + 1;
    const double scale = 1.0 + max_abs(y);
    if (change <= 1e-12 * scale && gap <= 1e-12 * scale && inner_tol <= 1e-13) break;
    inner_tol = std::clamp(1e-3 * std::max(change, gap) / scale, 1e-13, 1e-8);
    // mu is the scaled multiplier, so it shrinks when rho grows.
    if (gap > 10.0 * rho * change) {
      rho *= 2.0;
      for (std::size_t i : grid->interior_nodes()) mu[i] *= 0.5;
    } else if (rho * change > 10.0 * gap) {
      rho *= 0.5;
      for (std::size_t i : grid->interior_nodes()) mu[i] *= 2.0;
    }
  }
  return y;
}

}  // namespace

double semilinear_energy(const Grid& grid, const MonotoneGraph& graph, const Field& f, const Field& v) {
  require_same_grid(grid, f);
  require_same_grid(grid, v);
  const std::vector<double> kv = grid.apply_stiffness(v.values());
  double e = 0.0;
  for (std::size_t i : grid.interior_nodes()) {
    e += 0.5 * v[i] * kv[i] + grid.weight(i) * (graph.primitive(v[i]) - f[i] * v[i]);
  }
  return e;
}

Field semilinear_defect(const Grid& grid, const Field& f, const Field& u) {
  require_same_grid(grid, f);
  require_same_grid(grid, u);
  const std::vector<double> ku = grid.apply_stiffness(u.values());
  Field w(f.grid_ptr());
  for (std::size_t i : grid.interior_nodes()) w[i] = f[i] - ku[i] / grid.weight(i);
  return w;
}

SemilinearSolution solve_semilinear(const GridPtr& grid, const MonotoneGraph& graph, const Field& f,
                                    const SemilinearOptions& options) {
  if (!(options.tol >= 0.0)) throw ArgumentError("solve_semilinear: tol must be >= 0");
  require_same_grid(*grid, f);

  // Any solution satisfies |u| <= C ||f||_inf; sample the graph well beyond.
  const double reach = 10.0 * (1.0 + max_abs(f));
  check_monotone(graph, -reach, reach);

  SemilinearSolution sol;
  Field u(grid);
  if (options.initial) {
    require_same_grid(*grid, *options.initial);
    for (std::size_t i : grid->interior_nodes()) u[i] = (*options.initial)[i];
  }
  if (options.warm_start) u = admm_warm_start(grid, graph, f, std::move(u), options, sol.admm_iterations);

  const auto nodes = grid->interior_nodes();
  double energy = semilinear_energy(*grid, graph, f, u);
  sol.energy_history.push_back(energy);
  bool done = false;
  for (int sweep = 0; sweep < options.max_sweeps && !done; ++sweep) {
    double change = 0.0;
    auto relax = [&](std::size_t i) {
      const double next = relax_node(*grid, graph, f, u, i);
      change = std::max(change, std::abs(next - u[i]));
      u[i] = next;
    };
    std::for_each(nodes.begin(), nodes.end(), relax);
    std::for_each(nodes.rbegin(), nodes.rend(), relax);

    const double next_energy = semilinear_energy(*grid, graph, f, u);
    sol.energy_history.push_back(next_energy);
    sol.sweeps = sweep + 1;
    const double decrease = energy - next_energy;
    energy = next_energy;
    // Energy differences sit at rounding level long before the iterate
    // settles, so the nodal change must be small as well.
    const double scale = 1.0 + max_abs(u);
    done = (decrease <= options.tol * std::abs(energy) && change <= 1e-13 * scale) || change <= 1e-15 * scale;
  }
  if (!done) {
    std::ostringstream msg;
    msg << "nonlinear Gauss-Seidel did not converge in " << options.max_sweeps << " sweeps";
    throw NonConvergence(msg.str());
  }

  sol.w = semilinear_defect(*grid, f, u);
  for (std::size_t i : nodes) {
    const double lo = graph.g_minus(u[i]);
    const double hi = graph.g_plus(u[i]);
    const double wi = sol.w[i];
    sol.selection_violation = std::max(sol.selection_violation, std::max({lo - wi, wi - hi, 0.0}));
  }
  sol.energy = energy;
  sol.u = std::move(u);
  return sol;
}

ContractionCheck check_l1_contraction(const GridPtr& grid, const MonotoneGraph& graph, const Field& f1,
                                      const Field& f2, const SemilinearOptions& options) {
  SemilinearSolution s1 = solve_semilinear(grid, graph, f1, options);
  SemilinearSolution s2 = solve_semilinear(grid, graph, f2, options);
  ContractionCheck out;
  for (std::size_t i : grid->interior_nodes()) {
    out.lhs += grid->weight(i) * std::abs(s1.w[i] - s2.w[i]);
    out.rhs += grid->weight(i) * std::abs(f1[i] - f2[i]);
  }
  out.u1 = std::move(s1.u);
  out.u2 = std::move(s2.u);
  out.w1 = std::move(s1.w);
  out.w2 = std::move(s2.w);
  return out;
}

BvDiagnostic bv_diagnostic(const Grid& grid, const MonotoneGraph& graph, const SemilinearSolution& solution,
                           const Field& f) {
  BvDiagnostic d;
  d.tv_w = total_variation(grid, solution.w);
  d.tv_f = total_variation(grid, f);
  double l1_f = 0.0;
  for (std::size_t i : grid.interior_nodes()) l1_f += grid.weight(i) * std::abs(f[i]);
  const double denom = d.tv_f + l1_f + std::abs(graph.g_plus(0.0));
  d.ratio = denom > 0.0 ? d.tv_w / denom : 0.0;
  return d;
}

}  // namespace optpot
