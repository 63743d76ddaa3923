import numpy as np
import pytest

from pathgauge import gauges
from pathgauge.fields import confined_electric_block, confined_magnetic_disk, monopole, uniform_electric, uniform_field
from pathgauge.flux import (
    flux_loop,
    flux_open,
    flux_surface,
    full_sphere_flux,
    homotopy_surface,
    rectangle_surface,
    slice_sweep,
    sphere_slice,
)
from pathgauge.paths import LoopSpec, builtin_path, waypoint_path
from pathgauge.spacetime import lower

E0 = np.array([1.0, -0.5, 2.0])


def covariant(closed):
    return lambda pts: np.array([lower(closed(p)) for p in np.atleast_2d(pts)])


def rectangle_loop(corner, edge_u, edge_v):
    """Two paths from ``corner`` to the opposite vertex, along edge_u first and edge_v first."""
    corner = np.asarray(corner, float)
    a = waypoint_path([corner, corner + edge_u], name="u_first")
    b = waypoint_path([corner, corner + edge_v], name="v_first")
    return LoopSpec(a, b), corner + edge_u + edge_v


def random_rectangle(rng, plane, lo, hi):
    corner = np.zeros(4)
    corner[list(plane)] = rng.uniform(lo, hi, 2)
    eu, ev = np.zeros(4), np.zeros(4)
    eu[plane[0]] = rng.uniform(0.5, 3.0) * rng.choice([-1, 1])
    ev[plane[1]] = rng.uniform(0.5, 3.0) * rng.choice([-1, 1])
    return corner, eu, ev


def test_zero_potential_loop():
    zero = lambda pts: np.zeros((len(np.atleast_2d(pts)), 4))
    loop = LoopSpec(builtin_path("velocity"), builtin_path("length"))
    assert flux_loop(zero, loop, np.ones(4)).value == 0.0


@pytest.mark.parametrize("winding", [1, 2, 3])
def test_disk_loop_enclosing_flux(winding):
    B0, r0 = 3.0, 0.8
    field = confined_magnetic_disk(B0, r0)
    loop, x = rectangle_loop([0.0, -2.0, -2.0, 0.0], np.array([0, 4.0, 0, 0]), np.array([0, 0, 4.0, 0]))
    r = flux_loop(covariant(gauges.disk(B0, r0)), LoopSpec(loop.path_a, loop.path_b, winding), x,
                  discontinuities=field.discontinuities)
    # counterclockwise circulation of the spatial vector potential is minus the covariant loop integral
    assert abs(r.value + winding * B0 * np.pi * r0**2) <= 1e-6 * winding
    assert r.err_estimate >= 0 and r.route == "loop"


def test_stokes_uniform_electric(rng):
    field = uniform_field(E0, [0.3, -1.0, 0.7])
    pot = covariant(gauges.velocity(E0))
    potential = lambda pts: pot(pts) + covariant(gauges.symmetric_magnetic([0.3, -1.0, 0.7]))(pts)
    for plane in ((0, 1), (0, 2), (1, 2), (1, 3)):
        for _ in range(3):
            corner, eu, ev = random_rectangle(rng, plane, -3, 3)
            loop, x = rectangle_loop(corner, eu, ev)
            lp = flux_loop(potential, loop, x)
            sf = flux_surface(field, rectangle_surface(corner, eu, ev))
            assert abs(lp.value - sf.value) <= 2 * (lp.err_estimate + sf.err_estimate)


def test_stokes_disk(rng):
    B0, r0 = 2.0, 1.0
    field = confined_magnetic_disk(B0, r0)
    potential = covariant(gauges.disk(B0, r0))
    for _ in range(6):
        corner, eu, ev = random_rectangle(rng, (1, 2), -2, 2)
        loop, x = rectangle_loop(corner, eu, ev)
        lp = flux_loop(potential, loop, x, discontinuities=field.discontinuities)
        sf = flux_surface(field, rectangle_surface(corner, eu, ev))
        assert abs(lp.value - sf.value) <= 2 * (lp.err_estimate + sf.err_estimate)


def test_winding_linearity_and_orientation():
    field = confined_magnetic_disk(2.0, 1.0)
    p1, p2 = builtin_path("disk_p1"), builtin_path("disk_p2")
    potential = covariant(gauges.disk(2.0, 1.0))
    x = np.array([0.0, 0.3, 0.2, 0.0])
    kw = {"discontinuities": field.discontinuities}
    one = flux_loop(potential, LoopSpec(p1, p2, 1), x, **kw).value
    for n in (2, 5):
        assert abs(flux_loop(potential, LoopSpec(p1, p2, n), x, **kw).value - n * one) <= 1e-10 * abs(n * one)
    assert flux_loop(potential, LoopSpec(p2, p1), x, **kw).value == -one


def test_homotopy_surface_matches_loop():
    field = uniform_electric(E0)
    x = np.array([1.0, 0.5, -0.7, 1.2])
    velocity, length = builtin_path("velocity"), builtin_path("length")
    surface = flux_surface(field, homotopy_surface(velocity, length, x)).value
    assert surface == pytest.approx(-x[0] * np.dot(x[1:], E0), abs=1e-9)
    reverse = flux_surface(field, homotopy_surface(length, velocity, x)).value
    assert reverse == pytest.approx(-surface, abs=1e-12)


@pytest.mark.parametrize("phi", [np.pi / 4, np.pi / 2, np.pi, 3 * np.pi / 2])
def test_monopole_slice(phi):
    assert abs(flux_surface(monopole(0.6), sphere_slice(1.0, phi)).value - 1.2 * phi) <= 1e-6


def test_monopole_slice_doubling_and_radius_independence():
    field = monopole(0.6)
    for phi in (np.pi / 3, np.pi / 2, 0.9):
        small, big = slice_sweep(field, [phi, 2 * phi])
        assert abs(big.value - 2 * small.value) <= 1e-6
        assert abs(flux_surface(field, sphere_slice(2.5, phi)).value - small.value) <= 1e-6


def test_full_sphere():
    assert abs(full_sphere_flux(monopole(0.6), 1.0).value - 4 * np.pi * 0.6) <= 1e-5


@pytest.mark.parametrize("c", [1.0, 2.0])
def test_eblock_rectangle_covering_block(c):
    E, dt, dx = 1.7, 0.8, 1.3
    field = confined_electric_block(E, dt, dx, c=c)
    surface = rectangle_surface([-0.5, -0.5, 0, 0], [c * dt + 1.0, 0, 0, 0], [0, dx + 1.0, 0, 0])
    assert abs(flux_surface(field, surface).value - c * E * dx * dt) <= 1e-6


def test_open_flux_examples():
    field = uniform_electric(E0)
    x = np.array([1.3, 0.4, -0.7, 2.0])
    vel, length, straight = builtin_path("velocity"), builtin_path("length"), builtin_path("straight_line")
    assert flux_open(field, vel, length, x).value == pytest.approx(-x[0] * np.dot(x[1:], E0), abs=1e-8)
    half = flux_open(field, straight, length, x)
    assert half.value == pytest.approx(-0.5 * x[0] * np.dot(x[1:], E0), abs=1e-8)
    assert half.value == pytest.approx(flux_surface(field, homotopy_surface(straight, length, x)).value, abs=1e-8)
    assert abs(flux_open(field, vel, vel, x).value) <= 1e-8
    assert half.warning is None


def test_open_flux_on_confined_field_warns():
    field = confined_magnetic_disk(1.0, 1.0)
    r = flux_open(field, builtin_path("disk_p2"), builtin_path("disk_p1"), np.array([0.0, 0.2, 0.1, 0.0]))
    assert r.warning is not None and np.isfinite(r.value)
