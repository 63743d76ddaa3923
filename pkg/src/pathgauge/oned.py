"""Electrodynamics in one space dimension.

Points are (ct, x).  A point charge produces the causal field

    E(t, x) = q (step(x - r(tau_plus)) - step(r(tau_minus) - x))

where tau_plus / tau_minus are the retarded points reached by the backward
light rays heading left / right from the event.  A term is absent if its ray
misses the world line.  An electron-positron pair therefore encloses a
uniform field 2e, and its flux is 2e times the enclosed spacetime area.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PathError
from .fields import step
from .quadrature import adaptive_gauss_legendre
from .quantization import DEFAULT_TOLERANCE, QuantizationReport, phase_report
from .spacetime import NATURAL, Constants


def source_coefficient(d: int) -> float:
    """Solid-angle factor 2 pi^(d/2) / Gamma(d/2) in the d-space Maxwell law."""
    if int(d) != d or d < 1:
        raise ValueError(f"spatial dimension must be a positive integer, got {d}")
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def _as_worldline(points) -> np.ndarray:
    w = np.asarray(points, dtype=float)
    if w.ndim != 2 or w.shape[1] != 2 or w.shape[0] < 2:
        raise PathError("a 1+1 world line is an (n >= 2, 2) array of (ct, x) vertices")
    dt = np.diff(w[:, 0])
    dx = np.diff(w[:, 1])
    if np.any(dt <= 0) or np.any(np.abs(dx) >= dt):
        raise PathError("world line segments must be timelike with increasing ct")
    return w


def _retarded(w: np.ndarray, key: np.ndarray, target: float, ct: float):
    """Spatial position where a strictly increasing ``key`` along w equals target.

    Returns None when the ray misses the world line or meets it only at a
    time later than ``ct`` (a point on the forward light cone).
    """
    if target < key[0] or target > key[-1]:
        return None
    i = int(np.searchsorted(key, target, side="left"))
    if i == 0:
        point = w[0]
    else:
        frac = (target - key[i - 1]) / (key[i] - key[i - 1])
        point = w[i - 1] + frac * (w[i] - w[i - 1])
    if point[0] > ct:
        return None
    return float(point[1])


@dataclass(frozen=True)
class CausalField:
    value: float
    causal: bool


def causal_field_1d(q: float, worldline, ct: float, x: float) -> CausalField:
    """Field at (ct, x) of a charge q moving on a piecewise-linear world line.

    ``causal`` is False when neither backward light ray from the event meets
    the world line; the field is then 0.
    """
    w = _as_worldline(worldline)
    # h_plus: ct - x = r0 - r1 (ray arriving from the left), h_minus: ct + x = r0 + r1
    r_plus = _retarded(w, w[:, 0] - w[:, 1], ct - x, ct)
    r_minus = _retarded(w, w[:, 0] + w[:, 1], ct + x, ct)
    value = 0.0
    if r_plus is not None:
        value += q * float(step(x - r_plus))
    if r_minus is not None:
        value -= q * float(step(r_minus - x))
    return CausalField(value, r_plus is not None or r_minus is not None)


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    return (orient(p1, p2, p3) * orient(p1, p2, p4) < 0) and (orient(p3, p4, p1) * orient(p3, p4, p2) < 0)


@dataclass(frozen=True, eq=False)
class PairGeometry:
    """Positron (left) and electron (right) world lines sharing both end events."""

    positron: np.ndarray
    electron: np.ndarray

    def __post_init__(self):
        pos = _as_worldline(self.positron)
        ele = _as_worldline(self.electron)
        if not (np.allclose(pos[0], ele[0], atol=1e-12) and np.allclose(pos[-1], ele[-1], atol=1e-12)):
            raise PathError("pair world lines must share creation and annihilation events")
        object.__setattr__(self, "positron", pos)
        object.__setattr__(self, "electron", ele)
        poly = self.polygon
        n = len(poly)
        edges = [(poly[i], poly[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _segments_cross(*edges[i], *edges[j]):
                    raise PathError("pair polygon is self-intersecting")

    @property
    def polygon(self) -> np.ndarray:
        """Closed loop: electron forward, positron back (counter-clockwise in (x, ct))."""
        return np.vstack([self.electron[:-1], self.positron[::-1][:-1]])

    @property
    def area(self) -> float:
        xy = self.polygon[:, ::-1]  # (x, ct)
        x, y = xy[:, 0], xy[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

    @classmethod
    def rectangle(cls, cT: float, L: float, x_left: float = 0.0) -> "PairGeometry":
        """Pair separated by L for a coordinate time cT, as a sheared rectangle.

        Instantaneous separation is not timelike, so both separation and
        recombination legs move at half the speed of light along the same
        diagonal.  The region is a parallelogram of area exactly cT * L.
        """
        c0 = np.array([0.0, x_left])
        leg = np.array([2.0 * L, L])
        stay = np.array([cT, 0.0])
        ele = np.array([c0, c0 + leg, c0 + leg + stay])
        pos = np.array([c0, c0 + stay, c0 + stay + leg])
        return cls(pos, ele)


def pair_flux(pair: PairGeometry, e: float) -> float:
    """Flux 2 e A of the uniform field enclosed by the pair (shoelace area)."""
    return 2.0 * e * pair.area


def pair_flux_quadrature(pair: PairGeometry, e: float, *, order: int = 8, tol: float = 1e-12) -> float:
    """Flux from the superposed causal fields of both charges.

    At fixed x the field is piecewise constant in ct, with jumps only on light
    rays from vertices and where a world line passes x, so the ct integral is
    summed exactly.  The x integral is Gauss-Legendre split at vertex abscissae.
    Contributions from outside the pair's x-range cancel and are omitted.
    """
    verts = np.vstack([pair.positron, pair.electron])
    lines = ((e, pair.positron), (-e, pair.electron))
    t_lo, t_hi = float(verts[:, 0].min()), float(verts[:, 0].max())
    x_lo, x_hi = float(verts[:, 1].min()), float(verts[:, 1].max())
    t_hi += x_hi - x_lo  # light from the last vertex must clear the range

    def column(x):
        breaks = {t_lo, t_hi}
        breaks.update(float(v[0] + abs(x - v[1])) for v in verts)
        for _, w in lines:
            for a, b in zip(w[:-1], w[1:]):
                lo, hi = sorted((a[1], b[1]))
                if lo < x < hi:
                    breaks.add(float(a[0] + (x - a[1]) * (b[0] - a[0]) / (b[1] - a[1])))
        ts = np.array(sorted(t for t in breaks if t_lo <= t <= t_hi))
        mids = 0.5 * (ts[:-1] + ts[1:])
        fields = np.array([sum(causal_field_1d(q, w, t, x).value for q, w in lines) for t in mids])
        return float(np.dot(fields, np.diff(ts)))

    value, _ = adaptive_gauss_legendre(
        lambda xs: np.array([column(x) for x in xs]),
        x_lo, x_hi, order=order, tol=tol, breakpoints=sorted(set(verts[:, 1].tolist())),
    )
    return float(value)


def check_1d_quantization(area: float, alpha1: float, tolerance: float = DEFAULT_TOLERANCE) -> QuantizationReport:
    """alpha1 A = pi n, phrased as the generic phase check with phase 2 alpha1 A."""
    if not area > 0 or not alpha1 > 0:
        raise ValueError("area and alpha1 must be positive")
    return phase_report(2.0 * alpha1 * area, tolerance)


@dataclass(frozen=True)
class Alpha1Estimate:
    alpha_scale: float
    area_max: float
    compton: float


def estimate_alpha1(m: float, constants: Constants = NATURAL) -> Alpha1Estimate:
    """Order-of-magnitude coupling for the smallest quantized pair.

    The pair lifetime is fixed by saturating dt dE = hbar / 2 with dE = m c^2,
    the area is bounded by c^2 tau^2 / 2, and alpha1 A_max = pi.  The 8 pi
    prefactor that results is a convention of this estimate; only the
    scaling with the Compton wavelength is meaningful.
    """
    if not m > 0:
        raise ValueError("mass must be positive")
    hbar, c = constants.hbar, constants.c
    tau = hbar / (2.0 * m * c * c)
    area_max = c * c * tau * tau / 2.0
    return Alpha1Estimate(math.pi / area_max, area_max, hbar / (m * c))
