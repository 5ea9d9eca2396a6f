#include "optpot/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "optpot/control.hpp"
#include "optpot/errors.hpp"

namespace optpot {

namespace {

// Antiderivatives of r log r, r^3 log r and r log^2 r.
double prim_r_log(double r) {
  const double l = std::log(r);
  return 0.5 * r * r * l - 0.25 * r * r;
}

double prim_r3_log(double r) {
  const double l = std::log(r);
  const double r4 = r * r * r * r;
  return 0.25 * r4 * l - r4 / 16.0;
}

double prim_r_log2(double r) {
  const double l = std::log(r);
  return 0.5 * r * r * l * l - 0.5 * r * r * l + 0.25 * r * r;
}

void require_s0(double s0) {
  if (!(s0 > 0.0 && s0 < 0.25)) throw DomainError("s0 must lie in (0, 1/4)");
}

bool admissible(double s0, double a) {
  const double c = 4.0 * s0 - 1.0;
  return a > 0.0 && a < 1.0 && c + a * a < 2.0 * a * a * std::log(a);
}

}  // namespace

double example1_characteristic(double s0, double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("example1_characteristic: a must lie in (0, 1)");
  const double c = 4.0 * s0 - 1.0;
  const double i1 = prim_r_log(1.0) - prim_r_log(a);
  const double i3 = prim_r3_log(1.0) - prim_r3_log(a);
  const double i2 = prim_r_log2(1.0) - prim_r_log2(a);
  return std::log(a) * (c * i1 + i3) - (c + a * a) * i2;
}

double example1_radius(double s0) {
  require_s0(s0);
  constexpr int kScan = 200;
  const double lo = std::log(1e-6);
  const double hi = std::log(1.0 - 1e-6);
  double prev_a = std::exp(lo);
  double prev_f = example1_characteristic(s0, prev_a);
  for (int i = 1; i < kScan; ++i) {
    const double a = std::exp(lo + (hi - lo) * i / (kScan - 1));
    const double fa = example1_characteristic(s0, a);
    if ((prev_f <= 0.0) != (fa <= 0.0) || fa == 0.0) {
      double left = prev_a;
      double right = a;
      double fl = prev_f;
      while (right - left > 1e-10) {
        const double mid = 0.5 * (left + right);
        const double fm = example1_characteristic(s0, mid);
        if (fm == 0.0) {
          left = right = mid;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          left = mid;
          fl = fm;
        } else {
          right = mid;
        }
      }
      const double root = 0.5 * (left + right);
      if (admissible(s0, root)) return root;
    }
    prev_a = a;
    prev_f = fa;
  }
  throw NoBracket("example1_radius: no admissible sign change of the characteristic function");
}

double example1_state(double s0, double a, double r) {
  if (r < a) return s0;
  const double c = 4.0 * s0 - 1.0;
  if (r <= 0.0) return s0;
  return 0.25 * (1.0 - r * r) + (c + a * a) * std::log(r) / (4.0 * std::log(a));
}

double example1_ring_weight(double s0, double a) {
  const double c = 4.0 * s0 - 1.0;
  const double la = std::log(a);
  return (c + a * a * (1.0 - 2.0 * la)) / (4.0 * s0 * la);
}

RadialOptimal example1_solution(double s0) {
  RadialOptimal out;
  out.s0 = s0;
  out.a = example1_radius(s0);
  out.ring_weight = example1_ring_weight(s0, out.a);
  out.bulk_density = 1.0 / s0;
  out.total_mass = out.bulk_density * std::numbers::pi * out.a * out.a + out.ring_weight * 2.0 * std::numbers::pi * out.a;
  return out;
}

Field brute_force_boxlaw(const GridPtr& grid, const PotentialLaw& law, const CostIntegrand& j, const Field& f,
                         int levels) {
  law.validate();
  if (!law.bounded_domain()) throw ArgumentError("brute_force_boxlaw: law needs a bounded domain");
  if (levels != 2 && levels != 3) throw ArgumentError("brute_force_boxlaw: levels must be 2 or 3");
  const std::size_t count = grid->interior_count();
  if (count > 9) throw SizeError("brute_force_boxlaw: at most 9 interior nodes");
  std::vector<double> values = {law.lower(), law.upper()};
  if (levels == 3) values.insert(values.begin() + 1, 0.5 * (law.lower() + law.upper()));

  const auto nodes = grid->interior_nodes();
  std::size_t total = 1;
  for (std::size_t i = 0; i < count; ++i) total *= values.size();

  Field best(grid);
  double best_cost = std::numeric_limits<double>::infinity();
  Field m(grid);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t i = 0; i < count; ++i) {
      m[nodes[i]] = values[rest % values.size()];
      rest /= values.size();
    }
    const double cost = evaluate_cost(grid, law, j, f, m, 1e-13).total;
    if (cost < best_cost) {
      best_cost = cost;
      best = m;
    }
  }
  return best;
}

}  // namespace optpot
