#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "optpot/errors.hpp"
#include "optpot/grid.hpp"

using namespace optpot;
using std::numbers::pi;

TEST_CASE("build_radial") {
  const GridPtr g = build_radial(3);
  REQUIRE(g->size() == 3);
  CHECK(g->radius(0) == 0.0);
  CHECK(g->radius(1) == 0.5);
  CHECK(g->radius(2) == 1.0);
  CHECK(g->interior_count() == 2);
  CHECK_FALSE(g->interior(2));
  CHECK_THROWS_AS(build_radial(2), ArgumentError);
}

TEST_CASE("build_disc") {
  const GridPtr g = build_disc(3);
  REQUIRE(g->interior_count() == 1);
  const std::size_t c = g->interior_nodes()[0];
  CHECK(g->x(c) == 0.0);
  CHECK(g->y(c) == 0.0);
  CHECK(g->center_node() == c);
  CHECK_THROWS_AS(build_disc(1), ArgumentError);

  const GridPtr big = build_disc(129);
  const double ratio = static_cast<double>(big->interior_count()) / (129.0 * 129.0);
  CHECK(ratio == doctest::Approx(pi / 4.0).epsilon(0.02));
  for (std::size_t i = 0; i < big->size(); ++i) {
    if (!big->interior(i)) CHECK(big->weight(i) == 0.0);
    if (big->interior(i)) CHECK(big->x(i) * big->x(i) + big->y(i) * big->y(i) < 1.0);
  }
}

TEST_CASE("integrate") {
  const GridPtr d = build_disc(257);
  CHECK(integrate(*d, Field(d, 1.0)) == doctest::Approx(pi).epsilon(0.01));
  const GridPtr r = build_radial(101);
  CHECK(std::abs(integrate(*r, Field(r, 1.0)) - pi) <= 1e-6);
  CHECK(integrate(*r, Field(r)) == 0.0);
  CHECK_THROWS_AS(integrate(*r, Field(d, 1.0)), GridMismatch);

  // Linearity.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field a(d), b(d);
  for (std::size_t i = 0; i < d->size(); ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
  }
  Field c(d);
  for (std::size_t i = 0; i < d->size(); ++i) c[i] = 2.0 * a[i] - 3.0 * b[i];
  CHECK(integrate(*d, c) == doctest::Approx(2.0 * integrate(*d, a) - 3.0 * integrate(*d, b)));
}

TEST_CASE("radial quadrature is exact for the area and second order for r^2") {
  // int_disc r^2 = pi/2.
  double prev = 0.0;
  for (int n : {51, 101, 201}) {
    const GridPtr g = build_radial(n);
    const Field f = Field::from_function(g, [](double x, double y) { return x * x + y * y; });
    const double err = std::abs(integrate(*g, f) - pi / 2.0);
    if (prev > 0.0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("disc quadrature converges at least first order") {
  std::vector<double> errs;
  for (int n : {65, 129, 257}) {
    const GridPtr g = build_disc(n);
    errs.push_back(std::abs(integrate(*g, Field(g, 1.0)) - pi));
  }
  // Staircase error is noisy; compare the ends of the ladder.
  CHECK(errs[2] < errs[0]);
  CHECK(errs[2] < 8.0 * 2.0 / 256.0);
}

TEST_CASE("total_variation") {
  const GridPtr d = build_disc(129);
  CHECK(total_variation(*d, Field(d, 3.0)) == 0.0);

  double prev_err = 1e9;
  for (int n : {65, 129, 257}) {
    const GridPtr g = build_disc(n);
    const Field half = Field::interior_from_function(g, [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
    const double err = std::abs(total_variation(*g, half) - 2.0);
    CHECK(err <= prev_err + 1e-12);
    CHECK(err <= 2.0 * g->spacing() + 1e-12);
    prev_err = err;
  }

  const GridPtr r = build_radial(201);
  const Field ball = Field::interior_from_function(r, [](double x, double y) { return x * x + y * y < 0.25 ? 1.0 : 0.0; });
  CHECK(std::abs(total_variation(*r, ball) - pi) <= 2.0 * pi * r->spacing());

  // Homogeneity and triangle inequality.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Field a(d), b(d), s(d), c(d);
    for (std::size_t i : d->interior_nodes()) {
      a[i] = u(rng);
      b[i] = u(rng);
      s[i] = a[i] + b[i];
      c[i] = -2.5 * a[i];
    }
    CHECK(total_variation(*d, s) <= total_variation(*d, a) + total_variation(*d, b) + 1e-12);
    CHECK(total_variation(*d, c) == doctest::Approx(2.5 * total_variation(*d, a)));
  }
  CHECK_THROWS_AS(total_variation(*d, Field(r)), GridMismatch);
}

TEST_CASE("stiffness is symmetric and annihilates constants in the interior") {
  for (const GridPtr& g : {build_radial(17), build_disc(17)}) {
    for (std::size_t i : g->interior_nodes()) {
      for (const auto& e : g->stiffness_row(i)) {
        bool found = false;
        for (const auto& back : g->stiffness_row(e.col)) {
          if (back.col == i) {
            found = true;
            CHECK(back.value == doctest::Approx(e.value));
          }
        }
        CHECK(found);
        CHECK(e.value < 0.0);
      }
    }
  }
  // Radial weights are annulus areas: sum of row entries vanishes away from the boundary.
  const GridPtr g = build_radial(9);
  const std::vector<double> k1 = g->apply_stiffness(Field(g, 1.0).values());
  for (std::size_t i = 0; i + 2 < g->size(); ++i) CHECK(k1[i] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("field constructors") {
  const GridPtr g = build_disc(9);
  const Field f = Field::interior_from_function(g, [](double, double) { return 2.0; });
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(f[i] == (g->interior(i) ? 2.0 : 0.0));
  CHECK_THROWS_AS(Field(g, std::vector<double>(3, 0.0)), GridMismatch);
}
