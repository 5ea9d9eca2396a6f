#include "optpot/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "optpot/diagnostics.hpp"
#include "optpot/errors.hpp"

namespace optpot {

namespace {

bool uses_sign_direction(const PotentialLaw& law) {
  switch (law.kind) {
    case LawKind::Box:
    case LawKind::BoxMinusLinear:
      return true;
    case LawKind::BoxPlusLinear:
      return law.p == 1.0;
    case LawKind::Power:
      return false;
  }
  return false;
}

double sign(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

// Derivative of the smooth part of psi inside its domain.
double smooth_slope(const PotentialLaw& law, double s) {
  if (s <= 0.0) return 0.0;
  return law.k * law.p * std::pow(s, law.p - 1.0);
}

}  // namespace

CostBreakdown evaluate_cost(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                            const Field& m, double solver_tol, const std::optional<Field>& initial) {
  require_same_grid(*grid, m);
  CostBreakdown out;
  for (std::size_t i : grid->interior_nodes()) {
    const Extended psi = psi_eval(law, m[i]);
    if (!psi.is_finite()) {
      std::ostringstream msg;
      msg << "potential " << m[i] << " at node " << i << " is outside dom(psi)";
      throw DomainError(msg.str());
    }
    out.penalty_term += grid->weight(i) * psi.value();
  }
  StateSolution state = solve_state(grid, m, f, solver_tol, initial);
  out.state_term = j.integrate(state.u);
  out.total = out.state_term + out.penalty_term;
  out.u = std::move(state.u);
  out.report = state.report;
  return out;
}

double reduced_cost(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                    const Field& m, double solver_tol) {
  return evaluate_cost(grid, law, j, f, m, solver_tol).total;
}

Field descent_direction(const PotentialLaw& law, const Field& m, const Field& u, const Field& z,
                        bool paper_sign_third_example) {
  const Grid& grid = m.grid();
  require_same_grid(grid, u);
  require_same_grid(grid, z);
  Field d(m.grid_ptr());
  double norm2 = 0.0;
  for (std::size_t i : grid.interior_nodes()) {
    const double uz = u[i] * z[i];
    switch (law.kind) {
      case LawKind::Box:
        d[i] = sign(uz);
        break;
      case LawKind::BoxMinusLinear:
        d[i] = sign(uz + law.k);
        break;
      case LawKind::BoxPlusLinear:
        if (law.p == 1.0) {
          d[i] = paper_sign_third_example ? sign(law.k - uz) : sign(uz - law.k);
          break;
        }
        [[fallthrough]];
      case LawKind::Power:
        d[i] = uz - smooth_slope(law, m[i]);
        break;
    }
    norm2 += grid.weight(i) * d[i] * d[i];
  }
  const double norm = std::sqrt(norm2);
  if (norm < 1e-14) throw ZeroDirection("descent direction vanishes");
  if (!uses_sign_direction(law)) {
    for (std::size_t i : grid.interior_nodes()) d[i] /= norm;
  }
  return d;
}

Field default_initial_potential(const GridPtr& grid, const PotentialLaw& law) {
  const double value = law.kind == LawKind::Power ? 0.0 : 0.5 * (law.alpha + law.beta);
  Field m(grid);
  for (std::size_t i : grid->interior_nodes()) m[i] = value;
  return m;
}

double optimality_residual(const PotentialLaw& law, const Field& m, const Field& u, const Field& z,
                           const Grid& grid) {
  require_same_grid(grid, m);
  require_same_grid(grid, u);
  require_same_grid(grid, z);
  double acc = 0.0;
  for (std::size_t i : grid.interior_nodes()) {
    const double uz = u[i] * z[i];
    const double lo = h_minus_eval(law, uz);
    const double hi = h_eval(law, uz);
    acc += grid.weight(i) * std::max({lo - m[i], m[i] - hi, 0.0});
  }
  return acc;
}

OptimizeReport optimize(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                        const Field& m0, const OptimizeOptions& options) {
  law.validate();
  if (!(options.tol >= 0.0) || options.max_iter < 0 || !(options.eps0 > 0.0) || !(options.backtrack > 0.0) ||
      !(options.backtrack < 1.0) || options.max_halvings < 0) {
    throw ArgumentError("optimize: invalid options");
  }
  require_same_grid(*grid, m0);
  require_same_grid(*grid, f);

  const double step_unit = uses_sign_direction(law) ? law.beta - law.alpha : 1.0;
  OptimizeReport rep;
  rep.m = m0;
  CostBreakdown current = evaluate_cost(grid, law, j, f, rep.m, options.solver_tol);
  const double initial_cost = current.total;
  const double scale = initial_cost != 0.0 ? std::abs(initial_cost) : 1.0;
  rep.cost_history.push_back(initial_cost);
  Field z = solve_adjoint(grid, rep.m, j, current.u, options.solver_tol).u;

  rep.stop_reason = "max_iter";
  for (int it = 0; it < options.max_iter; ++it) {
    Field d;
    try {
      d = descent_direction(law, rep.m, current.u, z, options.paper_sign_third_example);
    } catch (const ZeroDirection&) {
      rep.stop_reason = "stationary";
      break;
    }

    bool accepted = false;
    double eps = options.eps0 * step_unit;
    Field trial(grid);
    CostBreakdown next;
    for (int halving = 0; halving <= options.max_halvings; ++halving, eps *= options.backtrack) {
      for (std::size_t i : grid->interior_nodes()) trial[i] = project(law, rep.m[i] + eps * d[i]);
      next = evaluate_cost(grid, law, j, f, trial, options.solver_tol, current.u);
      if (next.total < current.total) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      rep.stop_reason = "stationary";
      break;
    }

    const double change = std::abs(next.total - current.total) / scale;
    rep.m = trial;
    current = std::move(next);
    rep.cost_history.push_back(current.total);
    rep.iterations = it + 1;
    z = solve_adjoint(grid, rep.m, j, current.u, options.solver_tol, z).u;
    if (change < options.tol) {
      rep.stop_reason = "tolerance";
      break;
    }
  }
  rep.converged = rep.stop_reason != "max_iter";

  rep.u = current.u;
  rep.z = z;
  rep.optimality_residual = optimality_residual(law, rep.m, rep.u, rep.z, *grid);
  rep.l1_m = field_norms(rep.m).l1;
  rep.tv_m = total_variation(*grid, rep.m);
  const double lo = law.lower();
  const double hi = law.bounded_domain() ? law.upper() : law.lower();
  const double width = law.bounded_domain() ? law.upper() - law.lower() : 1.0;
  rep.bangbang_fraction = bangbang_fraction(rep.m, lo, hi, 1e-6 * width);
  return rep;
}

AuxiliarySolution solve_via_auxiliary(const GridPtr& grid, const PotentialLaw& law, const Field& f,
                                      const SemilinearOptions& options) {
  const MonotoneGraph graph = make_auxiliary_graph(law);
  AuxiliarySolution out;
  out.semilinear = solve_semilinear(grid, graph, f, options);
  out.u = out.semilinear.u;
  out.m = Field(grid);
  for (std::size_t i : grid->interior_nodes()) out.m[i] = h_eval(law, out.u[i] * out.u[i]);
  return out;
}

}  // namespace optpot
