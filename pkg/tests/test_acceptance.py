"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import time

import numpy as np
import pytest

from pathgauge import gauges
from pathgauge.classical import ClassicalPathFamily, action_and_phase, classical_potential, integrate_worldline
from pathgauge.cli import main
from pathgauge.fields import (
    confined_electric_block,
    confined_magnetic_disk,
    monopole,
    uniform_electric,
    uniform_field,
    uniform_magnetic,
)
from pathgauge.flux import flux_loop, flux_surface, full_sphere_flux, rectangle_surface, sphere_slice
from pathgauge.oned import (
    PairGeometry,
    check_1d_quantization,
    estimate_alpha1,
    pair_flux,
    pair_flux_quadrature,
    source_coefficient,
)
from pathgauge.paths import LoopSpec, affine_path, builtin_path, concatenate_winding
from pathgauge.potential import line_integral, path_transform, potential_at, potential_function
from pathgauge.presets import preset_names
from pathgauge.quantization import check_phase, dirac_condition
from pathgauge.spacetime import Constants, lower

E0 = np.array([1.0, -0.5, 2.0])


def gauge_grid():
    axis = np.linspace(-10.0, 10.0, 5)
    ct, x, y = np.meshgrid(axis, axis, axis, indexing="ij")
    return np.stack([ct.ravel(), x.ravel(), y.ravel(), np.full(ct.size, 7.5)], axis=-1)


def test_criterion_01_gauge_dictionary(criterion):
    field = uniform_electric(E0)
    grid = gauge_grid()
    assert len(grid) == 125 and np.max(np.abs(grid)) <= 10
    start = time.perf_counter()
    worst = 0.0
    for path, closed in [("velocity", gauges.velocity(E0)), ("length", gauges.length(E0)),
                         ("straight_line", gauges.fock_schwinger(E0))]:
        family = builtin_path(path)
        for x in grid:
            worst = max(worst, float(np.max(np.abs(potential_at(field, family, x).contravariant - closed(x)))))
    elapsed = time.perf_counter() - start
    criterion(1, "gauge dictionary", worst <= 1e-8 and elapsed < 5.0,
              f"max dev {worst:.2e} <= 1e-8, {elapsed:.2f} s < 5 s")


def test_criterion_02_path_transformation(criterion, rng):
    field = uniform_electric(E0)
    vel, length, straight = (builtin_path(n) for n in ("velocity", "length", "straight_line"))
    quoted = [
        (vel, length, lambda x: -x[0] * np.dot(x[1:], E0)),
        (straight, length, lambda x: -0.5 * x[0] * np.dot(x[1:], E0)),
    ]
    h = 1e-3
    start = time.perf_counter()
    worst = 0.0
    for x in rng.uniform(-3, 3, size=(4, 4)):
        for a, b, phi in quoted:
            lhs = potential_at(field, b, x).A - potential_at(field, a, x).A
            grad = np.array([(phi(x + h * e) - phi(x - h * e)) / (2 * h) for e in np.eye(4)])
            numeric = path_transform(field, a, b, x, probe_step=h)
            worst = max(worst, float(np.max(np.abs(lhs - grad))), numeric.max_dev,
                        abs(numeric.flux - phi(x)))
    elapsed = time.perf_counter() - start
    criterion(2, "path transformation", worst <= 1e-6 and elapsed < 5.0,
              f"max dev {worst:.2e} <= 1e-6, {elapsed:.2f} s < 5 s")


def test_criterion_03_monopole(criterion, rng):
    g = 0.5
    field = monopole(g)
    north, south = builtin_path("monopole_north"), builtin_path("monopole_south")
    ref_n, ref_s = gauges.monopole_north(g), gauges.monopole_south(g)
    start = time.perf_counter()
    pts = []
    while len(pts) < 50:
        p = np.array([rng.uniform(-5, 5), *rng.uniform(-5, 5, 2), rng.uniform(0.2, 5)])
        if np.hypot(p[1], p[2]) > 0.1:
            pts.append(p)
    pot_dev = max(
        max(np.max(np.abs(potential_at(field, north, x).contravariant - ref_n(x))),
            np.max(np.abs(potential_at(field, south, x).contravariant - ref_s(x))))
        for x in pts
    )
    slice_dev = max(abs(flux_surface(field, sphere_slice(1.0, phi)).value - 2 * g * phi)
                    for phi in (np.pi / 4, np.pi / 2, np.pi, 3 * np.pi / 2))
    full = full_sphere_flux(field, 1.0).value
    sphere_dev = abs(full - 4 * np.pi * g)
    verdicts_agree = True
    for gg in (0.25, 0.5, 1.0):
        for e in (0.5, 1.0, 1.5, 2.0, 3.0):
            sphere = full if gg == g else full_sphere_flux(monopole(gg), 1.0).value
            a = check_phase(sphere, Constants(e=e))
            b = dirac_condition(e, gg)
            expected = abs(2 * e * gg - round(2 * e * gg)) < 1e-12
            verdicts_agree &= a.quantized == b.quantized == expected
    elapsed = time.perf_counter() - start
    ok = pot_dev <= 1e-6 and slice_dev <= 1e-6 and sphere_dev <= 1e-5 and verdicts_agree and elapsed < 60
    criterion(3, "monopole", ok,
              f"potential dev {pot_dev:.2e}, slice dev {slice_dev:.2e}, sphere dev {sphere_dev:.2e}, "
              f"Dirac verdicts agree: {verdicts_agree}, {elapsed:.1f} s")


def test_criterion_04_confined_disk(criterion, rng):
    B0, r0 = 4.0, 1.0
    field = confined_magnetic_disk(B0, r0)
    p1, p2 = builtin_path("disk_p1"), builtin_path("disk_p2")
    ref = gauges.disk(B0, r0)
    inside = [np.array([rng.uniform(-2, 2), *(rng.uniform(0.05, 0.9) * np.array([np.cos(a), np.sin(a)])),
                        rng.uniform(-2, 2)]) for a in rng.uniform(0, 2 * np.pi, 6)]
    outside = [np.array([rng.uniform(-2, 2), *(rng.uniform(1.1, 4.0) * np.array([np.cos(a), np.sin(a)])),
                         rng.uniform(-2, 2)]) for a in rng.uniform(0, 2 * np.pi, 6)]
    dev = 0.0
    for x in inside + outside:
        a1 = potential_at(field, p1, x).contravariant
        a2 = potential_at(field, p2, x).contravariant
        dev = max(dev, float(np.max(np.abs(a1 - ref(x)))), float(np.max(np.abs(a2 - ref(x)))))
    x = inside[0]
    pot = potential_function(field, p1)
    loop = flux_loop(pot, LoopSpec(p1, p2), x, discontinuities=field.discontinuities).value
    loop_dev = abs(loop - B0 * np.pi * r0**2)
    criterion(4, "confined disk", dev <= 1e-6 and loop_dev <= 1e-6,
              f"potential dev {dev:.2e} (both paths, both regions), loop flux dev {loop_dev:.2e}")


def test_criterion_05_confined_eblock(criterion, rng):
    dt, dx = 1.0, 1.5
    field = confined_electric_block(1.0, dt, dx)
    p1 = builtin_path("eblock_p1")
    ref = gauges.eblock(1.0, dt, dx)
    regions = [
        lambda: [rng.uniform(0.05, dt - 0.05), rng.uniform(0.05, dx - 0.05)],
        lambda: [rng.uniform(0.05, dt - 0.05), rng.uniform(dx + 0.1, 4.0)],
        lambda: [rng.uniform(dt + 0.1, 4.0), rng.uniform(0.05, dx - 0.05)],
    ]
    dev = 0.0
    for make in regions:
        for _ in range(5):
            ct, X = make()
            x = np.array([ct, X, rng.uniform(-1, 1), rng.uniform(-1, 1)])
            dev = max(dev, float(np.max(np.abs(potential_at(field, p1, x).contravariant - ref(x)))))
    verdicts = True
    flux_dev = 0.0
    for E in (1.0, 2 * np.pi / (dt * dx), 4 * np.pi / (dt * dx), 3.0):
        f = confined_electric_block(E, dt, dx)
        flux = flux_surface(f, rectangle_surface([-0.5, -0.5, 0, 0], [dt + 1, 0, 0, 0], [0, dx + 1, 0, 0])).value
        flux_dev = max(flux_dev, abs(flux - E * dx * dt))
        exact = E * dx * dt / (2 * np.pi)
        verdicts &= check_phase(flux).quantized == (abs(exact - round(exact)) < 1e-12)
    criterion(5, "confined E block", dev <= 1e-6 and flux_dev <= 1e-6 and verdicts,
              f"three-region dev {dev:.2e}, rectangle flux dev {flux_dev:.2e}, phase verdicts match: {verdicts}")


def _random_family(rng, x0, low, high):
    mats = [np.diag(rng.uniform(low, high, 4)) for _ in range(int(rng.integers(1, 4)))]
    return affine_path(mats, x0, name="random")


def test_criterion_06_vanishing_open_integral(criterion, rng):
    scenarios = {
        "uniform E": (uniform_electric(E0), lambda: rng.uniform(-2, 2, 4), (-1.0, 2.0)),
        "uniform E and B": (uniform_field(E0, [0.3, -1.0, 0.7]), lambda: rng.uniform(-2, 2, 4), (-1.0, 2.0)),
        "monopole": (monopole(0.7), lambda: np.array([*rng.uniform(-2, 2, 3), rng.uniform(1.5, 3.0)]), (0.0, 1.0)),
    }
    worst = {}
    for name, (field, point, (lo, hi)) in scenarios.items():
        worst[name] = 0.0
        for _ in range(20):
            x0, x = point(), point()
            family = _random_family(rng, x0, lo, hi)
            value, _ = line_integral(potential_function(field, family, order=16), family.segments, x, order=16)
            worst[name] = max(worst[name], abs(value))
    top = max(worst.values())
    criterion(6, "vanishing open integral", top <= 1e-8,
              ", ".join(f"{k}: {v:.1e}" for k, v in worst.items()) + " <= 1e-8")


def test_criterion_07_classical_paths(criterion):
    tol = 1e-10
    drift = 0.0
    lines = [
        (uniform_electric([0.8, 0.0, 0.3]), [0, 0, 0, 0], [1.2, 0.3, -0.4, 0.1], (0, 3)),
        (uniform_magnetic([0.0, 0.0, 1.0]), [0, 1, 0, 0], [np.sqrt(1.25), 0, 0.5, 0], (0, 6)),
        (monopole(0.5), [0, 2, 0, 1], [np.sqrt(1.1), 0, 0.3, 0.1], (0, 5)),
    ]
    for field, y, u, span in lines:
        drift = max(drift, integrate_worldline(field, y, u, span, tol).mass_shell_drift())
    B = uniform_magnetic([0.0, 0.0, 1.0])
    orbit = integrate_worldline(B, [0, 1, 0, 0], [np.sqrt(1.25), 0, 0.5, 0], (0, 2 * np.pi), tol)
    closure = float(np.max(np.abs(orbit.end[1:] - orbit.start[1:])))
    interaction = 0.0
    agreement = 0.0
    cases = [(uniform_magnetic([0.0, 0.0, 1.0]), [1.0, 0.3, 0.2, 0.1]),
             (uniform_electric([1.0, 0.0, 0.0]), [1.0, -0.3, 0.1, 0.0])]
    for field, x in cases:
        family = ClassicalPathFamily(field)
        interaction = max(interaction, abs(action_and_phase(family.worldline(x)).interaction_integral))
        cp = classical_potential(field, family, x)
        pa = potential_at(field, family, x, order=16).A
        agreement = max(agreement, float(np.max(np.abs(cp - pa))))
    ok = drift <= 10 * tol and closure <= 1e-6 and interaction <= 1e-6 and agreement <= 1e-5
    criterion(7, "classical paths", ok,
              f"mass-shell drift {drift:.1e} <= {10 * tol:.0e}, closure {closure:.1e}, "
              f"interaction {interaction:.1e}, potential agreement {agreement:.1e}")


def _disk_potential(B0, r0):
    closed = gauges.disk(B0, r0)
    return lambda pts: np.array([lower(closed(p)) for p in np.atleast_2d(pts)])


def test_criterion_08_winding_consistency(criterion):
    rel = 0.0
    phase_dev = 0.0
    x = np.array([0.0, 0.3, 0.4, 0.0])
    field = confined_magnetic_disk(4.0, 1.0)
    pot = _disk_potential(4.0, 1.0)
    p1, p2 = builtin_path("disk_p1"), builtin_path("disk_p2")
    disc = field.discontinuities
    single = flux_loop(pot, LoopSpec(p1, p2), x, discontinuities=disc).value
    ia, _ = line_integral(pot, p1.segments, x, discontinuities=disc)
    for n in (2, 3, 5):
        wound = flux_loop(pot, LoopSpec(p1, p2, n), x, discontinuities=disc).value
        # the same quantity from one long path p1 + N (p2^-1 p1): its integral is int_p1 + N * flux
        long_path = concatenate_winding(LoopSpec(p2, p1, n), x)
        iw, _ = line_integral(pot, long_path.segments, x, discontinuities=disc)
        via_path = iw - ia
        for value in (wound, via_path):
            rel = max(rel, abs(value - n * single) / abs(n * single))
        assert check_phase(single).quantized
        phase_dev = max(phase_dev, abs(np.exp(-1j * via_path) - np.exp(-1j * single)))
    criterion(8, "winding consistency", rel <= 1e-10 and phase_dev <= 1e-6,
              f"N-wound rel dev {rel:.1e} <= 1e-10, phase factor dev {phase_dev:.1e} <= 1e-6")


def test_criterion_09_one_dimension(criterion, rng):
    coeff_ok = abs(source_coefficient(3) - 4 * np.pi) <= 4 * np.finfo(float).eps * 4 * np.pi
    coeff_ok &= abs(source_coefficient(1) - 2.0) <= 4 * np.finfo(float).eps * 2
    pairs = [PairGeometry.rectangle(3.0, 1.0)]
    while len(pairs) < 21:
        T = rng.uniform(1, 5)
        h = rng.uniform(0.05, 0.4) * T / np.pi
        v = rng.uniform(-0.2, 0.2)
        ts = np.linspace(0, T, int(rng.integers(4, 12)))
        wob = h * np.sin(np.pi * ts / T)
        pairs.append(PairGeometry(np.c_[ts, v * ts - wob], np.c_[ts, v * ts + wob]))
    route = max(abs(pair_flux(p, 1.0) - pair_flux_quadrature(p, 1.0)) / pair_flux(p, 1.0) for p in pairs)
    verdicts = True
    for area, alpha1 in [(3.0, np.pi / 3), (3.0, np.pi / 6), (1.0, 2 * np.pi), (2.5, 0.7), (1.0, 1e-3)]:
        one = check_1d_quantization(area, alpha1)
        generic = check_phase(2 * np.sqrt(alpha1) * area, Constants(e=np.sqrt(alpha1)))
        verdicts &= (one.quantized, one.n_nearest) == (generic.quantized, generic.n_nearest)
    scale = [estimate_alpha1(m).alpha_scale * estimate_alpha1(m).compton ** 2 for m in (0.1, 1.0, 7.3, 1e3)]
    scaling = max(abs(s / scale[0] - 1) for s in scale)
    ok = coeff_ok and route <= 1e-4 and verdicts and scaling <= 4 * np.finfo(float).eps
    criterion(9, "(1+1)D", ok,
              f"coefficients exact: {coeff_ok}, route rel dev {route:.1e}, verdicts coincide: {verdicts}, "
              f"alpha_scale*lambda_C^2 spread {scaling:.1e}")


def test_criterion_10_determinism(criterion, tmp_path, monkeypatch):
    identical = True
    for name in preset_names():
        outs = []
        for run, threads in enumerate(("1", "1", "4")):
            monkeypatch.setenv("PATHGAUGE_THREADS", threads)
            out = tmp_path / f"{name}-{run}"
            assert main(["preset", name, "--out", str(out)]) == 0
            outs.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
        identical &= bool(outs[0]) and outs[0] == outs[1] == outs[2]
    criterion(10, "determinism and schema", identical,
              f"{len(preset_names())} presets byte-identical across repeat runs and 1 vs 4 threads")
