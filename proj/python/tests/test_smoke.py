import math

import numpy as np
import pytest

import optpot


def test_radial_poisson_center_value():
    g = optpot.build_radial(201)
    u = optpot.solve_state(optpot.Field(g), optpot.Field(g, 1.0))
    assert abs(u[0] - 0.25) < 1e-4
    assert u.values.shape == (g.size,)


def test_grid_weights_cover_the_disc():
    g = optpot.build_radial(65)
    assert math.isclose(g.weights.sum(), math.pi, rel_tol=1e-12)
    d = optpot.build_disc(33)
    assert d.interior_mask.sum() == d.interior_count


def test_laws_and_conjugates():
    law = optpot.PotentialLaw.power(1.0, 2.0)
    assert law.psi(2.0) == pytest.approx(4.0)
    assert law.conjugate(4.0) == pytest.approx(4.0)
    assert law.h(4.0) == pytest.approx(2.0)
    box = optpot.PotentialLaw.box(0.0, 1.0)
    assert box.psi(2.0) == math.inf
    assert box.h(-1.0) == 0.0 and box.h(1.0) == 1.0
    monotone, witness = optpot.PotentialLaw.box_minus_linear(0.0, 1.0, 2.0).is_g_monotone()
    assert not monotone and witness[0] < witness[1]


def test_interface_radius():
    assert optpot.example1_radius(0.1) == pytest.approx(0.2825250837, abs=1e-9)
    with pytest.raises(optpot.DomainError):
        optpot.example1_radius(0.3)


def test_optimize_box_law_is_bang_bang():
    g = optpot.build_disc(33)
    f = optpot.Field(g, np.where(g.interior_mask, np.cos(3 * g.x) * 10, 0.0))
    gamma = optpot.Field(g, np.where(g.interior_mask, g.x * g.y, 0.0))
    law = optpot.PotentialLaw.box(0.0, 1.0)
    rep = optpot.optimize(law, optpot.CostIntegrand.linear(gamma), f)
    assert rep.cost_history[-1] <= rep.cost_history[0]
    assert rep.bangbang_fraction >= 0.99


def test_semilinear_and_auxiliary_route():
    g = optpot.build_radial(65)
    f = optpot.Field(g, np.where(g.interior_mask, 1.0, 0.0))
    sol = optpot.solve_semilinear(optpot.MonotoneGraph.step(0.05, 1.0), f)
    assert sol.selection_violation < 1e-8
    u, m = optpot.solve_via_auxiliary(optpot.PotentialLaw.power(0.01, 2.0), f)
    assert np.all(m.values >= 0.0)


def test_errors_map_to_python_exceptions():
    g = optpot.build_radial(9)
    with pytest.raises(optpot.NegativePotential):
        optpot.solve_state(optpot.Field(g, -1.0), optpot.Field(g, 1.0))
    with pytest.raises(optpot.GridMismatch):
        optpot.solve_state(optpot.Field(g), optpot.Field(optpot.build_radial(17), 1.0))
    assert issubclass(optpot.ConfigError, optpot.OptpotError)


def test_csv_round_trip_and_suite():
    g = optpot.build_radial(17)
    f = optpot.Field(g, np.linspace(0.0, 1.0, g.size))
    back = optpot.field_from_csv(g, optpot.field_to_csv(f))
    assert np.array_equal(back.values, f.values)
    assert optpot.run_property_suite(3, 2)["all_ok"]
