#include <cmath>
#include <random>

#include "doctest.h"

#include "optpot/diagnostics.hpp"
#include "optpot/errors.hpp"

using namespace optpot;

TEST_CASE("truncation utilities") {
  CHECK(truncate(2.0, 3.0) == 2.0);
  CHECK(truncate(2.0, -3.0) == -2.0);
  CHECK(truncate(1.5, 0.0) == 0.0);
  CHECK(cutoff(1.0, 1.5) == doctest::Approx(0.5));
  CHECK(cutoff(0.7, 0.0) == 1.0);
  CHECK(cutoff(1.0, -2.5) == 0.0);
  CHECK_THROWS_AS(truncate(0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(cutoff(-1.0, 1.0), ArgumentError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double k = 0.1 + std::abs(u(rng));
    const double a = u(rng);
    const double b = u(rng);
    CHECK(std::abs(truncate(k, a) - truncate(k, b)) <= std::abs(a - b));
    CHECK(truncate(k, -a) == -truncate(k, a));
    CHECK(cutoff(k, a) >= 0.0);
    CHECK(cutoff(k, a) <= 1.0);
  }
}

TEST_CASE("bangbang fraction") {
  const GridPtr g = build_disc(33);
  const Field alpha = Field::interior_from_function(g, [](double, double) { return 0.2; });
  const Field mid = Field::interior_from_function(g, [](double, double) { return 0.6; });
  CHECK(bangbang_fraction(alpha, 0.2, 1.0, 1e-6) == 1.0);
  CHECK(bangbang_fraction(mid, 0.2, 1.0, 1e-6) == 0.0);
  CHECK_THROWS_AS(bangbang_fraction(mid, 1.0, 0.2, 1e-6), ArgumentError);

  std::mt19937_64 rng(6);
  Field m = random_smooth_field(g, rng, 1.0);
  double prev = 0.0;
  for (double tol : {0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0}) {
    const double frac = bangbang_fraction(m, -0.5, 0.5, tol);
    CHECK(frac >= prev);
    CHECK(frac <= 1.0);
    prev = frac;
  }
}

TEST_CASE("norms") {
  const GridPtr g = build_radial(101);
  const Field one = Field::interior_from_function(g, [](double, double) { return -1.0; });
  const Norms n = field_norms(one);
  CHECK(n.linf == 1.0);
  CHECK(n.l1 == doctest::Approx(integrate_interior(*g, Field::interior_from_function(g, [](double, double) { return 1.0; }))));
  CHECK(n.l2 == doctest::Approx(std::sqrt(n.l1)));
}

TEST_CASE("random smooth fields are bounded and reproducible") {
  const GridPtr g = build_disc(33);
  std::mt19937_64 a(99), b(99);
  const Field fa = random_smooth_field(g, a, 2.5);
  const Field fb = random_smooth_field(g, b, 2.5);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(fa[i] == fb[i]);
    CHECK(std::abs(fa[i]) <= 2.5 + 1e-12);
    if (!g->interior(i)) CHECK(fa[i] == 0.0);
  }
}

TEST_CASE("property suite") {
  const DiagnosticsReport r = run_property_suite(42, 50);
  CHECK(r.all_ok());
  CHECK(r.counterexample.empty());
  CHECK(r.trials == 50);
  CHECK(r.l1 >= 0.0);
  CHECK(r.tv >= 0.0);
  CHECK_THROWS_AS(run_property_suite(1, 0), ArgumentError);

  const DiagnosticsReport again = run_property_suite(42, 4);
  const DiagnosticsReport same = run_property_suite(42, 4);
  CHECK(again.l1 == same.l1);
  CHECK(again.tv == same.tv);
}
