#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optpot/extended_real.hpp"

namespace optpot {

/// The penalty laws psi handled in closed form.
///
///   Power           psi(s) = k s^p on [0, inf), p > 1
///   Box             psi(s) = 0 on [alpha, beta]
///   BoxPlusLinear   psi(s) = k s^p on [alpha, beta], p >= 1
///   BoxMinusLinear  psi(s) = k (beta - s) on [alpha, beta]
///
/// psi is +inf outside its domain. BoxMinusLinear is the law -k s shifted by
/// the constant k*beta so that psi >= 0; the shift moves costs, never minimizers.
enum class LawKind { Power, Box, BoxPlusLinear, BoxMinusLinear };

std::string to_string(LawKind kind);
LawKind law_kind_from_string(const std::string& name);

struct PotentialLaw {
  LawKind kind = LawKind::Box;
  double alpha = 0.0;
  double beta = 1.0;
  double k = 1.0;
  double p = 2.0;
  /// Constant added to psi on its domain. Never changes minimizers.
  double offset = 0.0;

  static PotentialLaw power(double k, double p);
  static PotentialLaw box(double alpha, double beta);
  static PotentialLaw box_plus_linear(double alpha, double beta, double k, double p = 1.0);
  static PotentialLaw box_minus_linear(double alpha, double beta, double k);

  /// Throws ArgumentError when the parameters do not describe a proper,
  /// superlinear, non-negative law with a nondegenerate domain in [0, inf).
  void validate() const;

  bool bounded_domain() const { return kind != LawKind::Power; }
  double lower() const { return kind == LawKind::Power ? 0.0 : alpha; }
  double upper() const {
    return kind == LawKind::Power ? std::numeric_limits<double>::infinity() : beta;
  }
  bool in_domain(double s) const { return s >= lower() && s <= upper(); }
};

/// The subdifferential [d-psi(s), d+psi(s)].
struct SubdiffInterval {
  Extended lo;
  Extended hi;

  bool contains(double tau) const { return lo <= Extended(tau) && Extended(tau) <= hi; }
};

enum class HRegularity { Discontinuous, ContinuousOnly, Lipschitz };
std::string to_string(HRegularity r);

Extended psi_eval(const PotentialLaw& law, double s);
SubdiffInterval subdiff(const PotentialLaw& law, double s);
double conjugate_eval(const PotentialLaw& law, double tau);

/// h(tau) = max{s in dom psi : tau in d psi(s)}; the right derivative of psi*.
double h_eval(const PotentialLaw& law, double tau);
/// Left limit of h at tau.
double h_minus_eval(const PotentialLaw& law, double tau);

double g_eval(const PotentialLaw& law, double tau);

struct MonotoneVerdict {
  bool monotone = true;
  /// tau1 < tau2 with g(tau1) > g(tau2) when not monotone.
  std::optional<std::pair<double, double>> witness;
};
MonotoneVerdict is_g_monotone(const PotentialLaw& law);

double project(const PotentialLaw& law, double s);
HRegularity classify_h(const PotentialLaw& law);

/// A maximal monotone graph g given by its lower/upper envelopes.
///
/// g_minus and g_plus coincide away from `jumps`; at a jump c they are the
/// left and right limits. `primitive` is G(s) = int_0^s g.
struct MonotoneGraph {
  std::function<double(double)> g_minus;
  std::function<double(double)> g_plus;
  std::function<double(double)> primitive;
  std::vector<double> jumps;

  static MonotoneGraph zero();
  static MonotoneGraph linear(double slope);
  /// g(s) = c s^3.
  static MonotoneGraph cubic(double c);
  /// g = 0 below threshold, height at and above it.
  static MonotoneGraph step(double threshold, double height);
};

/// Samples g on [lo, hi] and throws MonotonicityError on a decreasing pair or
/// g_minus > g_plus.
void check_monotone(const MonotoneGraph& graph, double lo, double hi, int samples = 2001);

/// The unique s with t in [s + lambda g-(s), s + lambda g+(s)].
///
/// Jump points are tested first so solutions on a jump are exact; otherwise
/// bisection runs until the bracket is narrower than tol (tol = 0 bisects to
/// adjacent doubles).
double resolvent(const MonotoneGraph& graph, double lambda, double t, double tol = 1e-12);

/// g(s) = s h(s^2), the nonlinearity of the auxiliary problem for energy
/// costs. Its primitive is (psi*(s^2) - psi*(0)) / 2.
MonotoneGraph make_auxiliary_graph(const PotentialLaw& law);

}  // namespace optpot
