#include "optpot/convex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "optpot/errors.hpp"

namespace optpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Derivative of k s^p.
double power_slope(const PotentialLaw& law, double s) {
  return law.k * law.p * std::pow(s, law.p - 1.0);
}

// Inverse of power_slope on tau > 0, extended by 0 for tau <= 0.
double power_slope_inverse(const PotentialLaw& law, double tau) {
  if (tau <= 0.0) return 0.0;
  return std::pow(tau / (law.k * law.p), 1.0 / (law.p - 1.0));
}

bool is_linear_box(const PotentialLaw& law) {
  return law.kind == LawKind::BoxPlusLinear && law.p == 1.0;
}

}  // namespace

std::string to_string(LawKind kind) {
  switch (kind) {
    case LawKind::Power: return "power";
    case LawKind::Box: return "box";
    case LawKind::BoxPlusLinear: return "box_plus_linear";
    case LawKind::BoxMinusLinear: return "box_minus_linear";
  }
  return "unknown";
}

LawKind law_kind_from_string(const std::string& name) {
  if (name == "power") return LawKind::Power;
  if (name == "box") return LawKind::Box;
  if (name == "box_plus_linear") return LawKind::BoxPlusLinear;
  if (name == "box_minus_linear") return LawKind::BoxMinusLinear;
  throw ArgumentError("unknown law kind '" + name + "'");
}

std::string to_string(HRegularity r) {
  switch (r) {
    case HRegularity::Discontinuous: return "discontinuous";
    case HRegularity::ContinuousOnly: return "continuous";
    case HRegularity::Lipschitz: return "lipschitz";
  }
  return "unknown";
}

PotentialLaw PotentialLaw::power(double k, double p) {
  PotentialLaw law{LawKind::Power, 0.0, kInf, k, p};
  law.validate();
  return law;
}

PotentialLaw PotentialLaw::box(double alpha, double beta) {
  PotentialLaw law{LawKind::Box, alpha, beta, 0.0, 1.0};
  law.validate();
  return law;
}

PotentialLaw PotentialLaw::box_plus_linear(double alpha, double beta, double k, double p) {
  PotentialLaw law{LawKind::BoxPlusLinear, alpha, beta, k, p};
  law.validate();
  return law;
}

PotentialLaw PotentialLaw::box_minus_linear(double alpha, double beta, double k) {
  PotentialLaw law{LawKind::BoxMinusLinear, alpha, beta, k, 1.0};
  law.validate();
  return law;
}

void PotentialLaw::validate() const {
  auto fail = [](const std::string& what) { throw ArgumentError("invalid law: " + what); };
  if (!std::isfinite(offset) || offset < 0.0) fail("offset must be finite and >= 0");
  switch (kind) {
    case LawKind::Power:
      if (!(k > 0.0) || !std::isfinite(k)) fail("power law needs k > 0");
      if (!(p > 1.0) || !std::isfinite(p)) fail("power law needs p > 1");
      return;
    case LawKind::Box:
    case LawKind::BoxMinusLinear:
    case LawKind::BoxPlusLinear:
      break;
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be finite and >= 0");
  if (!(beta > alpha)) fail("beta must exceed alpha");
  if (kind == LawKind::Box) {
    if (!std::isfinite(beta)) fail("box law needs a finite beta");
    return;
  }
  if (!(k > 0.0) || !std::isfinite(k)) fail("k must be positive");
  if (kind == LawKind::BoxMinusLinear) {
    if (!std::isfinite(beta)) fail("box_minus_linear needs a finite beta");
    return;
  }
  if (!(p >= 1.0) || !std::isfinite(p)) fail("box_plus_linear needs p >= 1");
  if (p == 1.0 && !std::isfinite(beta)) fail("box_plus_linear with p = 1 needs a finite beta");
}

Extended psi_eval(const PotentialLaw& law, double s) {
  if (!law.in_domain(s)) return Extended::pos_inf();
  double value = 0.0;
  switch (law.kind) {
    case LawKind::Power:
    case LawKind::BoxPlusLinear:
      value = law.k * std::pow(s, law.p);
      break;
    case LawKind::Box:
      value = 0.0;
      break;
    case LawKind::BoxMinusLinear:
      value = law.k * (law.beta - s);
      break;
  }
  return value + law.offset;
}

SubdiffInterval subdiff(const PotentialLaw& law, double s) {
  if (!law.in_domain(s)) {
    std::ostringstream msg;
    msg << "subdiff: s = " << s << " outside dom(psi)";
    throw DomainError(msg.str());
  }
  double slope = 0.0;
  switch (law.kind) {
    case LawKind::Power:
      if (s == 0.0) return {Extended::neg_inf(), 0.0};
      return {power_slope(law, s), power_slope(law, s)};
    case LawKind::Box:
      slope = 0.0;
      break;
    case LawKind::BoxPlusLinear:
      slope = power_slope(law, s);
      break;
    case LawKind::BoxMinusLinear:
      slope = -law.k;
      break;
  }
  if (s == law.alpha) return {Extended::neg_inf(), slope};
  if (s == law.beta) return {slope, Extended::pos_inf()};
  return {slope, slope};
}

double conjugate_eval(const PotentialLaw& law, double tau) {
  double value = 0.0;
  switch (law.kind) {
    case LawKind::Power: {
      const double s = power_slope_inverse(law, tau);
      value = tau * s * (1.0 - 1.0 / law.p);
      break;
    }
    case LawKind::Box:
      value = std::max(tau * law.alpha, tau * law.beta);
      break;
    case LawKind::BoxPlusLinear:
      if (is_linear_box(law)) {
        value = std::max(law.alpha * (tau - law.k), law.beta * (tau - law.k));
      } else {
        const double s = std::clamp(power_slope_inverse(law, tau), law.alpha, law.beta);
        value = tau * s - law.k * std::pow(s, law.p);
      }
      break;
    case LawKind::BoxMinusLinear:
      value = std::max(law.alpha * (tau + law.k), law.beta * (tau + law.k)) - law.k * law.beta;
      break;
  }
  return value - law.offset;
}

double h_eval(const PotentialLaw& law, double tau) {
  switch (law.kind) {
    case LawKind::Power:
      return power_slope_inverse(law, tau);
    case LawKind::Box:
      return tau < 0.0 ? law.alpha : law.beta;
    case LawKind::BoxPlusLinear:
      if (is_linear_box(law)) return tau < law.k ? law.alpha : law.beta;
      return std::clamp(power_slope_inverse(law, tau), law.alpha, law.beta);
    case LawKind::BoxMinusLinear:
      return tau < -law.k ? law.alpha : law.beta;
  }
  return 0.0;
}

double h_minus_eval(const PotentialLaw& law, double tau) {
  switch (law.kind) {
    case LawKind::Box:
      return tau <= 0.0 ? law.alpha : law.beta;
    case LawKind::BoxPlusLinear:
      if (is_linear_box(law)) return tau <= law.k ? law.alpha : law.beta;
      return h_eval(law, tau);
    case LawKind::BoxMinusLinear:
      return tau <= -law.k ? law.alpha : law.beta;
    case LawKind::Power:
      return h_eval(law, tau);
  }
  return 0.0;
}

double g_eval(const PotentialLaw& law, double tau) { return h_eval(law, tau) * tau; }

MonotoneVerdict is_g_monotone(const PotentialLaw& law) {
  // h >= 0 is non-decreasing, so tau h(tau) can only drop at a jump of h
  // located at a negative tau. Among the closed-form laws that happens only
  // for BoxMinusLinear, whose jump sits at tau = -k.
  if (law.kind != LawKind::BoxMinusLinear) return {};
  const double jump = -law.k;
  double eps = std::min(1e-6, 0.5 * (law.beta - law.alpha) * law.k / (law.alpha + 1.0));
  while (!(g_eval(law, jump - eps) > g_eval(law, jump)) && eps > 1e-300) eps *= 0.5;
  return {false, std::make_pair(jump - eps, jump)};
}

double project(const PotentialLaw& law, double s) {
  if (law.kind == LawKind::Power) return std::max(s, 0.0);
  return std::min(law.beta, std::max(s, law.alpha));
}

HRegularity classify_h(const PotentialLaw& law) {
  switch (law.kind) {
    case LawKind::Box:
    case LawKind::BoxMinusLinear:
      return HRegularity::Discontinuous;
    case LawKind::Power:
      // Gap quotient near s = 0 behaves like k p (p-1) s^(p-2).
      return law.p <= 2.0 ? HRegularity::Lipschitz : HRegularity::ContinuousOnly;
    case LawKind::BoxPlusLinear:
      if (is_linear_box(law)) return HRegularity::Discontinuous;
      if (law.p <= 2.0 || law.alpha > 0.0) return HRegularity::Lipschitz;
      return HRegularity::ContinuousOnly;
  }
  return HRegularity::Discontinuous;
}

MonotoneGraph MonotoneGraph::zero() {
  auto z = [](double) { return 0.0; };
  return {z, z, z, {}};
}

MonotoneGraph MonotoneGraph::linear(double slope) {
  auto g = [slope](double s) { return slope * s; };
  return {g, g, [slope](double s) { return 0.5 * slope * s * s; }, {}};
}

MonotoneGraph MonotoneGraph::cubic(double c) {
  auto g = [c](double s) { return c * s * s * s; };
  return {g, g, [c](double s) { return 0.25 * c * s * s * s * s; }, {}};
}

MonotoneGraph MonotoneGraph::step(double threshold, double height) {
  return {
      [=](double s) { return s > threshold ? height : 0.0; },
      [=](double s) { return s >= threshold ? height : 0.0; },
      [=](double s) { return height * (std::max(s, threshold) - std::max(0.0, threshold)); },
      {threshold},
  };
}

void check_monotone(const MonotoneGraph& graph, double lo, double hi, int samples) {
  if (samples < 2 || !(hi > lo)) throw ArgumentError("check_monotone: bad sampling range");
  std::vector<double> ladder;
  ladder.reserve(static_cast<std::size_t>(samples) + graph.jumps.size());
  for (int i = 0; i < samples; ++i) ladder.push_back(lo + (hi - lo) * i / (samples - 1));
  for (double c : graph.jumps) {
    if (c >= lo && c <= hi) ladder.push_back(c);
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  auto fail = [](double a, double b) {
    std::ostringstream msg;
    msg << "graph decreases between " << a << " and " << b;
    throw MonotonicityError(msg.str());
  };
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double s = ladder[i];
    if (graph.g_minus(s) > graph.g_plus(s)) fail(s, s);
    if (i + 1 < ladder.size() && graph.g_plus(s) > graph.g_minus(ladder[i + 1])) fail(s, ladder[i + 1]);
  }
}

double resolvent(const MonotoneGraph& graph, double lambda, double t, double tol) {
  if (!(lambda > 0.0)) throw ArgumentError("resolvent: lambda must be positive");
  for (double c : graph.jumps) {
    if (c + lambda * graph.g_minus(c) <= t && t <= c + lambda * graph.g_plus(c)) return c;
  }

  double lo = t - lambda * std::abs(graph.g_plus(t)) - 1.0;
  for (double width = t - lo; lo + lambda * graph.g_plus(lo) > t; width *= 2.0) lo = t - 2.0 * width;
  double hi = t + lambda * std::abs(graph.g_minus(t)) + 1.0;
  for (double width = hi - t; hi + lambda * graph.g_minus(hi) < t; width *= 2.0) hi = t + 2.0 * width;

  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (mid + lambda * graph.g_plus(mid) < t) {
      lo = mid;
    } else if (mid + lambda * graph.g_minus(mid) > t) {
      hi = mid;
    } else {
      return mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

MonotoneGraph make_auxiliary_graph(const PotentialLaw& law) {
  law.validate();
  // Argument of h. For the linear box law h jumps at tau = k; snap s^2 so the
  // jump sits exactly at the double sqrt(k) and rounding cannot move it.
  const bool jump = is_linear_box(law);
  const double root = jump ? std::sqrt(law.k) : 0.0;
  auto arg = [law, jump, root](double s) {
    const double a = std::abs(s);
    const double tau = s * s;
    if (!jump) return tau;
    if (a == root) return law.k;
    if (a > root) return std::max(tau, law.k);
    return std::min(tau, std::nextafter(law.k, 0.0));
  };
  // For s < 0 the argument s^2 decreases as s increases, so the envelopes of
  // h swap sides there.
  MonotoneGraph graph{
      [law, arg](double s) { return s >= 0.0 ? s * h_minus_eval(law, arg(s)) : s * h_eval(law, arg(s)); },
      [law, arg](double s) { return s >= 0.0 ? s * h_eval(law, arg(s)) : s * h_minus_eval(law, arg(s)); },
      [law](double s) { return 0.5 * (conjugate_eval(law, s * s) - conjugate_eval(law, 0.0)); },
      {},
  };
  if (jump) graph.jumps = {-root, root};
  check_monotone(graph, -10.0, 10.0);
  return graph;
}

}  // namespace optpot
