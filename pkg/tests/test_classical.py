import numpy as np
import pytest

from pathgauge.classical import (
    ActionTerms,
    ClassicalPathFamily,
    action_and_phase,
    classical_potential,
    integrate_worldline,
    semiclassical_phase,
    shoot,
)
from pathgauge.errors import PathError, ShootingError
from pathgauge.fields import monopole, uniform_electric, uniform_field, uniform_magnetic, zero_field
from pathgauge import gauges
from pathgauge.potential import potential_at
from pathgauge.spacetime import NATURAL, Constants, lower, minkowski_dot


def test_force_free_straight_line():
    y0, u0 = np.array([0.5, 1.0, -1.0, 2.0]), np.array([1.5, 0.3, 0.4, -0.2])
    line = integrate_worldline(zero_field(), y0, u0, (0.0, 4.0))
    s = np.linspace(0, 4, 9)
    np.testing.assert_allclose(line.position(s), y0 + s[:, None] * u0, atol=1e-12)
    np.testing.assert_allclose(line.acceleration(s), 0.0, atol=1e-10)


@pytest.mark.parametrize("charge, B", [(1.0, 1.0), (2.0, 1.0), (1.0, 0.5)])
def test_cyclotron_orbit(charge, B):
    omega = charge * B  # proper-time angular frequency e B / (m c) with m = c = 1
    u = np.array([np.sqrt(1.25), 0.0, 0.5, 0.0])
    period = 2 * np.pi / omega
    line = integrate_worldline(uniform_magnetic([0, 0, B]), [0, 1, 0, 0], u, (0, period), charge=charge)
    assert np.max(np.abs(line.end[1:] - line.start[1:])) <= 1e-6
    assert line.end[0] == pytest.approx(u[0] * period, rel=1e-10)
    radius = 0.5 / omega
    # samples evenly spaced over one period are evenly spaced in angle, so their mean is the centre
    pts = line.position(np.linspace(0, period, 40, endpoint=False))[:, 1:3]
    centre = pts.mean(axis=0)
    np.testing.assert_allclose(np.linalg.norm(pts - centre, axis=1), radius, atol=1e-8)


def test_hyperbolic_motion():
    E, charge = 0.7, 1.3
    a = charge * E
    line = integrate_worldline(uniform_electric([E, 0, 0]), np.zeros(4), [1, 0, 0, 0], (0, 3), charge=charge)
    tau = np.linspace(0, 3, 13)
    y = line.position(tau)
    # a positive charge accelerates against E with this sign convention of the equation of motion
    np.testing.assert_allclose(y[:, 0], np.sinh(a * tau) / a, atol=1e-6)
    np.testing.assert_allclose(y[:, 1], -(np.cosh(a * tau) - 1) / a, atol=1e-6)


@pytest.mark.parametrize(
    "field, y, u",
    [
        (uniform_field([0.4, -0.2, 0.1], [0.3, 0.0, -0.6]), [0, 0, 0, 0], [1.4, 0.2, -0.5, 0.3]),
        (uniform_magnetic([0.0, 1.0, 1.0]), [0, 1, 0, 0], [2.0, 0.5, 0.5, 1.0]),
        (monopole(0.8), [0, 1.5, 0.5, 1.0], [1.2, -0.2, 0.4, 0.1]),
    ],
)
def test_mass_shell_conserved(field, y, u):
    tol = 1e-10
    line = integrate_worldline(field, y, u, (0, 4), tol)
    assert line.mass_shell_drift() <= 10 * tol


def test_integrate_rejects_bad_input():
    with pytest.raises(ValueError):
        integrate_worldline(zero_field(), np.zeros(4), np.zeros(4), (0, 1))
    with pytest.raises(ValueError):
        integrate_worldline(zero_field(), np.zeros(4), [1, 0, 0, 0], (0, 1), mass=0.0)


def test_shoot_hits_target():
    field = uniform_magnetic([0, 0, 1.0])
    x = np.array([1.0, 0.3, 0.2, 0.1])
    result = shoot(field, np.zeros(4), x)
    np.testing.assert_allclose(result.worldline.end, x, atol=1e-10)
    np.testing.assert_allclose(result.worldline.start, 0.0, atol=1e-14)


def test_shoot_rejects_spacelike_separation():
    with pytest.raises(ShootingError):
        shoot(zero_field(), np.zeros(4), np.array([0.5, 1.0, 0.0, 0.0]))


def test_conjugate_point_detected():
    # after one full cyclotron period every circle through the start returns to it
    with pytest.raises(ShootingError):
        shoot(uniform_magnetic([0, 0, 1.0]), np.zeros(4), np.array([2 * np.pi, 0.0, 0.0, 0.0]))


def test_classical_potential_zero_field():
    family = ClassicalPathFamily(zero_field())
    np.testing.assert_array_equal(classical_potential(zero_field(), family, np.array([2.0, 0.3, -0.5, 0.1])), 0.0)


def test_classical_potential_matches_quadrature_uniform_e():
    field = uniform_electric([0.6, 0.0, -0.3])
    family = ClassicalPathFamily(field)
    x = np.array([1.2, 0.2, 0.1, -0.3])
    cp = classical_potential(field, family, x)
    np.testing.assert_allclose(cp, potential_at(field, family, x, order=16).A, atol=1e-5)


def test_resolve_and_sensitivity_jacobians_agree():
    field = uniform_magnetic([0, 0, 1.0])
    x = np.array([1.0, 0.3, 0.2, 0.1])
    sens = ClassicalPathFamily(field)
    res = ClassicalPathFamily(field, jacobian="resolve")
    sig = np.array([0.25, 0.5, 0.9])
    sens.solve(x)
    np.testing.assert_allclose(sens.segments[0].dydx(sig, x), res.resolve_dydx(sig, x), atol=1e-5)
    with pytest.raises(ValueError):
        ClassicalPathFamily(field, jacobian="guess")


def test_force_free_proper_time_action():
    m, u = 3.0, np.array([1.25, 0.75, 0.0, 0.0])  # u.u = 1, so s is proper time
    line = integrate_worldline(zero_field(), np.zeros(4), u, (0, 2.0), mass=m)
    zero = lambda pts: np.zeros((len(np.atleast_2d(pts)), 4))
    terms = action_and_phase(line, potential=zero)
    assert terms.proper_time_action == pytest.approx(-m * 2.0, rel=1e-12)
    assert terms.interaction_integral == 0.0


def test_interaction_vanishes_on_classical_path():
    field = uniform_magnetic([0, 0, 1.0])
    family = ClassicalPathFamily(field)
    terms = action_and_phase(family.worldline(np.array([0.8, 0.2, 0.1, 0.0])))
    assert abs(terms.interaction_integral) <= 1e-6


def test_interaction_nonzero_on_other_path():
    B = np.array([0.0, 0.0, 1.0])
    closed = gauges.symmetric_magnetic(B)
    potential = lambda pts: np.array([lower(closed(p)) for p in np.atleast_2d(pts)])
    line = integrate_worldline(zero_field(), [0, 1, 0, 0], [np.sqrt(2), 0, 1, 0], (0, 1))
    terms = action_and_phase(line, potential=potential)
    # A = (B x r)/2, so A_y = x/2 = 1/2 along the line and A_mu dy^mu = -1/2
    assert terms.interaction_integral == pytest.approx(-0.5, abs=1e-10)


def test_spacelike_worldline_rejected():
    line = integrate_worldline(zero_field(), np.zeros(4), [0.5, 1.0, 0, 0], (0, 1))
    with pytest.raises(PathError):
        action_and_phase(line)


def test_semiclassical_phase():
    terms = ActionTerms(-2.0, 0.5)
    assert semiclassical_phase(terms, 1.0) == pytest.approx(-2.5)
    assert semiclassical_phase(terms, 1.0, Constants(hbar=2.0)) == pytest.approx(-1.25)
    assert semiclassical_phase(ActionTerms(-1.0, 0.0), 3.0, NATURAL) == -1.0
    assert minkowski_dot([1, 0, 0, 0], [1, 0, 0, 0]) == 1.0
