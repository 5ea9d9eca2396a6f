#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "optpot/grid.hpp"

namespace optpot {

/// T_k: s clamped to [-k, k].
double truncate(double k, double s);
/// S_k: 1 on |s| <= k, 2 - |s|/k on k < |s| < 2k, 0 beyond.
double cutoff(double k, double s);

/// Fraction of interior nodes within tol of alpha or beta.
double bangbang_fraction(const Field& m, double alpha, double beta, double tol);

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};
/// Quadrature norms over interior nodes.
Norms field_norms(const Field& v);

/// Smooth random combination of a few plane waves with |value| <= amplitude.
Field random_smooth_field(const GridPtr& grid, std::mt19937_64& rng, double amplitude, int modes = 4);

struct DiagnosticsReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double tv = 0.0;
  double bangbang_fraction = 0.0;
  bool comparison_ok = true;
  bool contraction_ok = true;
  bool symmetry_ok = true;
  bool fenchel_ok = true;
  int trials = 0;
  /// JSON description of the first failing trial, empty when all pass.
  std::string counterexample;

  bool all_ok() const { return comparison_ok && contraction_ok && symmetry_ok && fenchel_ok; }
};

/// Randomized checks, seeded for exact reproduction: comparison principle of
/// the state equation, L1 contraction of the semilinear solver (linear, cubic
/// and step graphs), symmetry of the elliptic operator, and the Fenchel
/// identity for all four laws. The norms and tv describe w1 - w2 of the
/// contraction trial with the smallest slack.
DiagnosticsReport run_property_suite(std::uint64_t seed, int trials);

}  // namespace optpot
