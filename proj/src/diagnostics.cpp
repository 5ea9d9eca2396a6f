#include "optpot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "optpot/control.hpp"
#include "optpot/convex.hpp"
#include "optpot/elliptic.hpp"
#include "optpot/errors.hpp"
#include "optpot/semilinear.hpp"

namespace optpot {

double truncate(double k, double s) {
  if (!(k > 0.0)) throw ArgumentError("truncate: k must be positive");
  return std::clamp(s, -k, k);
}

double cutoff(double k, double s) {
  if (!(k > 0.0)) throw ArgumentError("cutoff: k must be positive");
  const double a = std::abs(s);
  if (a <= k) return 1.0;
  if (a < 2.0 * k) return 2.0 - a / k;
  return 0.0;
}

double bangbang_fraction(const Field& m, double alpha, double beta, double tol) {
  if (alpha > beta) throw ArgumentError("bangbang_fraction: alpha > beta");
  const Grid& grid = m.grid();
  if (grid.interior_count() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i : grid.interior_nodes()) {
    if (std::min(std::abs(m[i] - alpha), std::abs(m[i] - beta)) <= tol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(grid.interior_count());
}

Norms field_norms(const Field& v) {
  const Grid& grid = v.grid();
  Norms n;
  for (std::size_t i : grid.interior_nodes()) {
    const double a = std::abs(v[i]);
    n.l1 += grid.weight(i) * a;
    n.l2 += grid.weight(i) * a * a;
    n.linf = std::max(n.linf, a);
  }
  n.l2 = std::sqrt(n.l2);
  return n;
}

Field random_smooth_field(const GridPtr& grid, std::mt19937_64& rng, double amplitude, int modes) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Wave {
    double a, p, q, phi;
  };
  std::vector<Wave> waves(static_cast<std::size_t>(modes));
  double total = 0.0;
  for (auto& w : waves) {
    w = {unit(rng), 3.0 * std::numbers::pi * unit(rng), 3.0 * std::numbers::pi * unit(rng), phase(rng)};
    total += std::abs(w.a);
  }
  const double scale = total > 0.0 ? amplitude / total : 0.0;
  return Field::interior_from_function(grid, [&](double x, double y) {
    double v = 0.0;
    for (const auto& w : waves) v += w.a * std::cos(w.p * x + w.q * y + w.phi);
    return scale * v;
  });
}

namespace {

using nlohmann::json;

std::vector<PotentialLaw> sample_laws() {
  return {
      PotentialLaw::power(0.7, 2.0),
      PotentialLaw::box(0.25, 2.0),
      PotentialLaw::box_plus_linear(0.0, 1.5, 0.8, 1.0),
      PotentialLaw::box_minus_linear(0.5, 3.0, 1.2),
  };
}

// Picks tau in the subdifferential at s, sampling a finite window of a
// half-line.
double sample_subgradient(const SubdiffInterval& sd, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (sd.lo.is_finite() && sd.hi.is_finite()) return sd.lo.value() + u01(rng) * (sd.hi.value() - sd.lo.value());
  if (sd.lo.is_finite()) return sd.lo.value() + 5.0 * u01(rng);
  if (sd.hi.is_finite()) return sd.hi.value() - 5.0 * u01(rng);
  return 0.0;
}

double sample_in_domain(const PotentialLaw& law, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double r = u01(rng);
  // Hit the endpoints a quarter of the time each.
  const double hi = law.bounded_domain() ? law.upper() : 3.0;
  if (r < 0.25) return law.lower();
  if (r < 0.5 && law.bounded_domain()) return law.upper();
  return law.lower() + u01(rng) * (hi - law.lower());
}

json field_summary(const Field& f) {
  const Norms n = field_norms(f);
  return {{"l1", n.l1}, {"linf", n.linf}};
}

}  // namespace

DiagnosticsReport run_property_suite(std::uint64_t seed, int trials) {
  if (trials < 1) throw ArgumentError("run_property_suite: trials must be >= 1");
  std::mt19937_64 rng(seed);
  DiagnosticsReport rep;
  rep.trials = trials;
  const GridPtr radial = build_radial(33);
  const GridPtr disc = build_disc(17);
  const auto laws = sample_laws();
  double best_slack = std::numeric_limits<double>::infinity();

  auto record = [&](const json& detail) {
    if (rep.counterexample.empty()) rep.counterexample = detail.dump();
  };

  for (int t = 0; t < trials; ++t) {
    const GridPtr& grid = (t % 2 == 0) ? radial : disc;
    const std::string grid_name = grid->kind() == GridKind::Radial ? "radial" : "disc";

    // Comparison principle.
    {
      Field m = random_smooth_field(grid, rng, 5.0);
      for (std::size_t i : grid->interior_nodes()) m[i] = std::abs(m[i]);
      const Field f1 = random_smooth_field(grid, rng, 2.0);
      Field f2 = random_smooth_field(grid, rng, 1.0);
      for (std::size_t i : grid->interior_nodes()) f2[i] = f1[i] + std::abs(f2[i]);
      const Field u1 = solve_state(grid, m, f1, 1e-12).u;
      const Field u2 = solve_state(grid, m, f2, 1e-12).u;
      double worst = 0.0;
      for (std::size_t i : grid->interior_nodes()) worst = std::max(worst, u1[i] - u2[i]);
      if (worst > 1e-10) {
        rep.comparison_ok = false;
        record({{"check", "comparison"}, {"trial", t}, {"grid", grid_name}, {"max_u1_minus_u2", worst}});
      }
    }

    // L1 contraction for three graphs.
    {
      std::uniform_real_distribution<double> thr(-0.05, 0.05);
      const MonotoneGraph graphs[] = {MonotoneGraph::linear(1.0), MonotoneGraph::cubic(1.0),
                                      MonotoneGraph::step(thr(rng), 1.0)};
      const char* names[] = {"linear", "cubic", "step"};
      for (int g = 0; g < 3; ++g) {
        const Field f1 = random_smooth_field(grid, rng, 4.0);
        const Field f2 = random_smooth_field(grid, rng, 4.0);
        const ContractionCheck c = check_l1_contraction(grid, graphs[g], f1, f2);
        const double slack = c.rhs + 1e-8 - c.lhs;
        if (slack < best_slack) {
          best_slack = slack;
          Field diff(grid);
          for (std::size_t i : grid->interior_nodes()) diff[i] = c.w1[i] - c.w2[i];
          const Norms n = field_norms(diff);
          rep.l1 = n.l1;
          rep.l2 = n.l2;
          rep.linf = n.linf;
          rep.tv = total_variation(*grid, diff);
        }
        if (slack < 0.0) {
          rep.contraction_ok = false;
          record({{"check", "contraction"}, {"trial", t}, {"grid", grid_name}, {"graph", names[g]},
                  {"lhs", c.lhs}, {"rhs", c.rhs}, {"f1", field_summary(f1)}, {"f2", field_summary(f2)}});
        }
      }
    }

    // Symmetry of -Delta + m.
    {
      Field m = random_smooth_field(grid, rng, 3.0);
      for (std::size_t i : grid->interior_nodes()) m[i] = std::abs(m[i]);
      const EllipticOperator op(grid, m);
      const Field v = random_smooth_field(grid, rng, 1.0);
      const Field w = random_smooth_field(grid, rng, 1.0);
      const std::vector<double> av = op.apply(v.values());
      const std::vector<double> aw = op.apply(w.values());
      double lhs = 0.0;
      double rhs = 0.0;
      double mag = 0.0;
      for (std::size_t i : grid->interior_nodes()) {
        lhs += av[i] * w[i];
        rhs += v[i] * aw[i];
        mag += std::abs(av[i] * w[i]);
      }
      if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, mag)) {
        rep.symmetry_ok = false;
        record({{"check", "symmetry"}, {"trial", t}, {"grid", grid_name}, {"lhs", lhs}, {"rhs", rhs}});
      }
    }

    // Fenchel identity tau s = psi(s) + psi*(tau) on the subdifferential.
    for (const auto& law : laws) {
      for (int k = 0; k < 4; ++k) {
        const double s = sample_in_domain(law, rng);
        const double tau = sample_subgradient(subdiff(law, s), rng);
        const double gap = tau * s - psi_eval(law, s).value() - conjugate_eval(law, tau);
        if (std::abs(gap) > 1e-10) {
          rep.fenchel_ok = false;
          record({{"check", "fenchel"}, {"trial", t}, {"law", to_string(law.kind)}, {"s", s}, {"tau", tau},
                  {"gap", gap}});
        }
      }
    }
  }
  return rep;
}

}  // namespace optpot
