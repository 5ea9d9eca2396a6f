#include <cmath>
#include <random>

#include "doctest.h"

#include "optpot/diagnostics.hpp"
#include "optpot/elliptic.hpp"
#include "optpot/errors.hpp"
#include "optpot/semilinear.hpp"

using namespace optpot;

namespace {

Field constant(const GridPtr& g, double v) {
  return Field::interior_from_function(g, [v](double, double) { return v; });
}

double max_abs_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Step of the given height at t0, smoothed into a linear ramp of width eps.
MonotoneGraph ramp(double t0, double height, double eps) {
  auto g = [=](double s) {
    if (s <= t0 - eps) return 0.0;
    if (s >= t0) return height;
    return height * (s - t0 + eps) / eps;
  };
  auto prim = [=](double s) {
    auto P = [=](double x) {
      if (x <= t0 - eps) return 0.0;
      if (x <= t0) return 0.5 * height * (x - t0 + eps) * (x - t0 + eps) / eps;
      return 0.5 * height * eps + height * (x - t0);
    };
    return P(s) - P(0.0);
  };
  return {g, g, prim, {}};
}

}  // namespace

TEST_CASE("linear graph matches the state equation with m = 1") {
  const GridPtr g = build_radial(201);
  const SemilinearSolution s = solve_semilinear(g, MonotoneGraph::linear(1.0), constant(g, 1.0));
  const Field u = solve_state(g, constant(g, 1.0), constant(g, 1.0), 1e-13).u;
  CHECK(max_abs_diff(s.u, u) <= 1e-8);
  CHECK(s.selection_violation <= 1e-8);
}

TEST_CASE("zero graph gives the Poisson solution") {
  const GridPtr g = build_radial(201);
  const SemilinearSolution s = solve_semilinear(g, MonotoneGraph::zero(), constant(g, 1.0));
  CHECK(std::abs(s.u[0] - 0.25) <= 1e-4);
  const BvDiagnostic bv = bv_diagnostic(*g, MonotoneGraph::zero(), s, constant(g, 1.0));
  CHECK(bv.tv_w <= 1e-8);
}

TEST_CASE("inactive step graph equals the zero graph") {
  const GridPtr g = build_disc(33);
  const Field f = constant(g, 1.0);
  const SemilinearSolution s0 = solve_semilinear(g, MonotoneGraph::zero(), f);
  const SemilinearSolution s1 = solve_semilinear(g, MonotoneGraph::step(0.5, 3.0), f);
  CHECK(max_abs_diff(s0.u, s1.u) <= 1e-10);
}

TEST_CASE("energy decreases across sweeps and selection holds") {
  const GridPtr g = build_disc(17);
  const Field f = Field::interior_from_function(g, [](double x, double y) { return 4.0 * std::sin(3.0 * x) + y; });
  SemilinearOptions opt;
  opt.warm_start = false;
  for (const MonotoneGraph& graph : {MonotoneGraph::cubic(2.0), MonotoneGraph::step(0.01, 1.0)}) {
    const SemilinearSolution s = solve_semilinear(g, graph, f, opt);
    REQUIRE(s.energy_history.size() >= 2);
    for (std::size_t i = 1; i < s.energy_history.size(); ++i) {
      CHECK(s.energy_history[i] <= s.energy_history[i - 1] + 1e-14 * std::abs(s.energy_history[i - 1]));
    }
    CHECK(s.selection_violation <= 1e-8);
    CHECK(semilinear_energy(*g, graph, f, s.u) == doctest::Approx(s.energy));
  }
}

TEST_CASE("w is the discrete defect") {
  const GridPtr g = build_radial(65);
  const Field f = Field::interior_from_function(g, [](double x, double) { return 2.0 - 3.0 * x; });
  const SemilinearSolution s = solve_semilinear(g, MonotoneGraph::step(0.05, 1.0), f);
  const Field w = semilinear_defect(*g, f, s.u);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(w[i] == s.w[i]);
  CHECK(s.selection_violation <= 1e-8);
}

TEST_CASE("two initial guesses reach the same solution") {
  const GridPtr g = build_disc(33);
  std::mt19937_64 rng(8);
  const Field f = random_smooth_field(g, rng, 3.0);
  for (const MonotoneGraph& graph : {MonotoneGraph::cubic(1.0), MonotoneGraph::step(0.0, 0.7)}) {
    SemilinearOptions a;
    SemilinearOptions b;
    b.initial = random_smooth_field(g, rng, 1.0);
    b.warm_start = false;
    const SemilinearSolution sa = solve_semilinear(g, graph, f, a);
    const SemilinearSolution sb = solve_semilinear(g, graph, f, b);
    CHECK(max_abs_diff(sa.u, sb.u) <= 1e-8);
  }
}

TEST_CASE("contraction and comparison") {
  const GridPtr g = build_radial(65);
  std::mt19937_64 rng(13);
  const MonotoneGraph graph = MonotoneGraph::cubic(1.0);
  const Field f1 = random_smooth_field(g, rng, 3.0);
  const ContractionCheck same = check_l1_contraction(g, graph, f1, f1);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);

  for (int t = 0; t < 10; ++t) {
    const Field a = random_smooth_field(g, rng, 3.0);
    const Field b = random_smooth_field(g, rng, 3.0);
    const ContractionCheck c = check_l1_contraction(g, MonotoneGraph::step(0.02, 1.5), a, b);
    CHECK(c.lhs <= c.rhs + 1e-8);
    Field shifted(g);
    for (std::size_t i : g->interior_nodes()) shifted[i] = a[i] + 0.3;
    const ContractionCheck d = check_l1_contraction(g, graph, a, shifted);
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(d.u2[i] >= d.u1[i] - 1e-12);
  }
}

TEST_CASE("bv diagnostic stays bounded under refinement") {
  std::vector<double> ratios;
  for (int n : {65, 129, 257}) {
    const GridPtr g = build_radial(n);
    const Field f = Field::interior_from_function(g, [](double x, double y) { return 2.0 * std::cos(2.0 * std::hypot(x, y)); });
    const MonotoneGraph graph = MonotoneGraph::step(0.1, 1.0);
    const SemilinearSolution s = solve_semilinear(g, graph, f);
    const BvDiagnostic bv = bv_diagnostic(*g, graph, s, f);
    CHECK(std::isfinite(bv.ratio));
    ratios.push_back(bv.ratio);
  }
  CHECK(ratios[1] <= 2.0 * ratios[0]);
  CHECK(ratios[2] <= 2.0 * ratios[1]);

  const GridPtr g = build_radial(65);
  const Field f = Field::interior_from_function(g, [](double x, double) { return 1.0 + x; });
  const SemilinearSolution s = solve_semilinear(g, MonotoneGraph::linear(1.0), f);
  const BvDiagnostic bv = bv_diagnostic(*g, MonotoneGraph::linear(1.0), s, f);
  CHECK(bv.tv_w == doctest::Approx(total_variation(*g, s.u)).epsilon(1e-6));
}

TEST_CASE("smoothed steps converge to the step solution") {
  const GridPtr g = build_radial(129);
  const Field f = constant(g, 2.0);
  const SemilinearSolution exact = solve_semilinear(g, MonotoneGraph::step(0.2, 1.0), f);
  const double e2 = max_abs_diff(solve_semilinear(g, ramp(0.2, 1.0, 1e-2), f).u, exact.u);
  const double e3 = max_abs_diff(solve_semilinear(g, ramp(0.2, 1.0, 1e-3), f).u, exact.u);
  CHECK(e3 <= e2);
  CHECK(e3 <= 1e-3);
}

TEST_CASE("decreasing graphs are rejected") {
  const GridPtr g = build_radial(17);
  MonotoneGraph bad;
  bad.g_minus = [](double s) { return -2.0 * s; };
  bad.g_plus = bad.g_minus;
  bad.primitive = [](double s) { return -s * s; };
  CHECK_THROWS_AS(solve_semilinear(g, bad, constant(g, 1.0)), MonotonicityError);
}

TEST_CASE("sweep cap raises NonConvergence") {
  const GridPtr g = build_disc(33);
  SemilinearOptions opt;
  opt.warm_start = false;
  opt.max_sweeps = 2;
  CHECK_THROWS_AS(solve_semilinear(g, MonotoneGraph::cubic(1.0), constant(g, 1.0), opt), NonConvergence);
}
