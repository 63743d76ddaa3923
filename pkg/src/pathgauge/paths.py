"""Path families y(s, x) running from a fixed start point x0 to the point x.

A :class:`PathFamily` is an ordered list of segments, each parametrised by a
local ``sigma`` in [0, 1].  The global parameter ``s`` gives every segment an
equal share of [0, 1].  Quadrature is always done per segment in ``sigma``.

Builtin families are chains of affine waypoints ``W_k(x) = M_k x + c_k``; for
those both ``dy/dsigma`` and ``dy^lambda/dx^mu`` are exact.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PathError
from .spacetime import four_vector

FD_STEP = 1e-6
STRING_CLEARANCE = 1e-6
_EYE = np.eye(4)


def _richardson(diff, h):
    return (4.0 * diff(0.5 * h) - diff(h)) / 3.0


class Segment:
    """One smooth piece of a path.  Subclasses implement ``point``.

    Derivatives default to central differences with one Richardson step.
    """

    analytic = False

    def point(self, sig, x) -> np.ndarray:
        raise NotImplementedError

    def dyds(self, sig, x) -> np.ndarray:
        return self.fd_dyds(sig, x)

    def dydx(self, sig, x) -> np.ndarray:
        return self.fd_dydx(sig, x)

    def fd_dyds(self, sig, x, h=FD_STEP) -> np.ndarray:
        sig = np.asarray(sig, dtype=float)

        def diff(step):
            return (self.point(sig + step, x) - self.point(sig - step, x)) / (2.0 * step)

        return _richardson(diff, h)

    def fd_dydx(self, sig, x, h=FD_STEP) -> np.ndarray:
        """Returns shape (n, 4, 4) indexed [n, lambda, mu] = dy^lambda / dx^mu."""
        sig = np.asarray(sig, dtype=float)
        x = np.asarray(x, dtype=float)
        step = h * max(1.0, float(np.max(np.abs(x))))
        if step <= 1e3 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(x)))):
            raise PathError("finite-difference step underflow")
        cols = []
        for mu in range(4):
            e = _EYE[mu]

            def diff(hh, e=e):
                return (self.point(sig, x + hh * e) - self.point(sig, x - hh * e)) / (2.0 * hh)

            cols.append(_richardson(diff, step))
        return np.stack(cols, axis=-1)


@dataclass(frozen=True, eq=False)
class Waypoint:
    """Affine map x -> matrix @ x + offset."""

    matrix: np.ndarray
    offset: np.ndarray

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=float) + self.offset

    @classmethod
    def fixed(cls, p) -> "Waypoint":
        return cls(np.zeros((4, 4)), np.asarray(p, dtype=float))

    @classmethod
    def linear(cls, diag) -> "Waypoint":
        return cls(np.diag(np.asarray(diag, dtype=float)), np.zeros(4))

    @classmethod
    def affine(cls, diag, offset) -> "Waypoint":
        return cls(np.diag(np.asarray(diag, dtype=float)), np.asarray(offset, dtype=float))


IDENTITY = Waypoint(np.eye(4), np.zeros(4))


class AffineSegment(Segment):
    """Straight segment between two affine waypoints."""

    analytic = True

    def __init__(self, start: Waypoint, end: Waypoint):
        self.start = start
        self.end = end

    def point(self, sig, x):
        sig = np.atleast_1d(np.asarray(sig, dtype=float))[:, None]
        a, b = self.start(x), self.end(x)
        return (1.0 - sig) * a + sig * b

    def dyds(self, sig, x):
        n = np.atleast_1d(sig).size
        return np.broadcast_to(self.end(x) - self.start(x), (n, 4)).copy()

    def dydx(self, sig, x):
        sig = np.atleast_1d(np.asarray(sig, dtype=float))[:, None, None]
        return (1.0 - sig) * self.start.matrix + sig * self.end.matrix


class ReversedSegment(Segment):
    def __init__(self, inner: Segment):
        self.inner = inner
        self.analytic = inner.analytic

    def point(self, sig, x):
        return self.inner.point(1.0 - np.asarray(sig, dtype=float), x)

    def dyds(self, sig, x):
        return -self.inner.dyds(1.0 - np.asarray(sig, dtype=float), x)

    def dydx(self, sig, x):
        return self.inner.dydx(1.0 - np.asarray(sig, dtype=float), x)


class PowerReparametrized(Segment):
    """The same curve traversed with sigma -> sigma**power (monotone on [0, 1])."""

    def __init__(self, inner: Segment, power: float = 2.0):
        self.inner = inner
        self.power = power
        self.analytic = inner.analytic

    def point(self, sig, x):
        return self.inner.point(np.asarray(sig, dtype=float) ** self.power, x)

    def dyds(self, sig, x):
        sig = np.atleast_1d(np.asarray(sig, dtype=float))
        chain = self.power * sig ** (self.power - 1.0)
        return chain[:, None] * self.inner.dyds(sig**self.power, x)

    def dydx(self, sig, x):
        return self.inner.dydx(np.asarray(sig, dtype=float) ** self.power, x)


class PathFamily:
    """Ordered segments from ``x0`` to the evaluation point ``x``."""

    def __init__(self, segments, x0, name="path", jacobian_mode="analytic", validator=None):
        if not segments:
            raise PathError("a path needs at least one segment")
        if jacobian_mode not in ("analytic", "finite-difference"):
            raise ValueError(f"unknown jacobian_mode {jacobian_mode!r}")
        self.segments = list(segments)
        self.x0 = four_vector(x0)
        self.name = name
        self.jacobian_mode = jacobian_mode
        self.validator = validator

    def __repr__(self):
        return f"PathFamily({self.name!r}, {len(self.segments)} segments)"

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    def with_mode(self, jacobian_mode: str) -> "PathFamily":
        return PathFamily(self.segments, self.x0, self.name, jacobian_mode, self.validator)

    def validate(self, x) -> None:
        if self.validator is not None:
            self.validator(np.asarray(x, dtype=float))

    def segment_derivatives(self, k: int, sig, x):
        """Local (dy/dsigma, dy/dx) on segment k, honouring ``jacobian_mode``."""
        seg = self.segments[k]
        if self.jacobian_mode == "analytic" and seg.analytic:
            return seg.dyds(sig, x), seg.dydx(sig, x)
        return seg.fd_dyds(sig, x), seg.fd_dydx(sig, x)

    def locate(self, s: float) -> tuple[int, float]:
        if not 0.0 <= s <= 1.0:
            raise PathError(f"path parameter s={s} outside [0, 1]")
        scaled = s * self.n_segments
        k = min(int(np.floor(scaled)), self.n_segments - 1)
        return k, scaled - k

    def is_junction(self, s: float) -> bool:
        scaled = s * self.n_segments
        return 0.0 < s < 1.0 and abs(scaled - round(scaled)) < 1e-14

    def point(self, s: float, x) -> np.ndarray:
        k, sig = self.locate(s)
        return self.segments[k].point(sig, x)[0]

    def jacobians(self, s: float, x):
        """Global dy/ds (4,) and dy^lambda/dx^mu (4, 4) at parameter s."""
        if self.is_junction(s):
            raise PathError(f"s={s} is a segment junction; split the integral there")
        k, sig = self.locate(s)
        dyds, dydx = self.segment_derivatives(k, np.array([sig]), x)
        return self.n_segments * dyds[0], dydx[0]

    def evaluate(self, s, x):
        """Points and global dy/ds for an array of parameters s (junctions allowed)."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        n = self.n_segments
        k = np.clip(np.floor(s * n).astype(int), 0, n - 1)
        y = np.empty((s.size, 4))
        dyds = np.empty((s.size, 4))
        for idx in np.unique(k):
            mask = k == idx
            sig = s[mask] * n - idx
            seg = self.segments[idx]
            y[mask] = seg.point(sig, x)
            d, _ = self.segment_derivatives(idx, sig, x)
            dyds[mask] = n * d
        return y, dyds

    def junction_gaps(self, x) -> np.ndarray:
        """Distance between consecutive segment end and start points."""
        gaps = [
            np.max(np.abs(a.point(1.0, x)[0] - b.point(0.0, x)[0]))
            for a, b in zip(self.segments[:-1], self.segments[1:])
        ]
        return np.array(gaps)

    def reversed(self) -> list[Segment]:
        """Segments traversing the path from x back to x0."""
        return [ReversedSegment(seg) for seg in reversed(self.segments)]

    def reparametrized(self, k: int, power: float = 2.0) -> "PathFamily":
        segs = list(self.segments)
        segs[k] = PowerReparametrized(segs[k], power)
        return PathFamily(segs, self.x0, f"{self.name}~reparam", self.jacobian_mode, self.validator)


def chain(waypoints, x0, name, validator=None) -> PathFamily:
    """Piecewise-linear family through affine waypoints; the last must map x to x."""
    segs = [AffineSegment(a, b) for a, b in zip(waypoints[:-1], waypoints[1:])]
    return PathFamily(segs, x0, name=name, validator=validator)


def waypoint_path(points, name="waypoints") -> PathFamily:
    """x0 = points[0] -> fixed points[1:] -> x, linearly interpolated."""
    pts = [four_vector(p) for p in points]
    if not pts:
        raise PathError("waypoint list is empty")
    wps = [Waypoint.fixed(p) for p in pts] + [IDENTITY]
    return chain(wps, pts[0], name)


def affine_path(matrices, x0, name="affine") -> PathFamily:
    """Waypoints x0 + M_k (x - x0) for the given matrices, then x itself.

    All waypoints collapse onto x0 when x = x0, so the family is degenerate
    (zero length) at its own start point.
    """
    x0 = four_vector(x0)
    wps = [Waypoint.fixed(x0)]
    for M in matrices:
        M = np.asarray(M, dtype=float)
        wps.append(Waypoint(M, x0 - M @ x0))
    wps.append(IDENTITY)
    return chain(wps, x0, name)


def _axis_clearance(x):
    rho = np.hypot(x[1], x[2])
    r = np.linalg.norm(x[1:])
    if rho < STRING_CLEARANCE * r or r == 0.0:
        raise PathError(
            f"endpoint {x} is within {STRING_CLEARANCE:g} r of the z axis; "
            "the monopole path construction degenerates there"
        )


BUILTIN_NAMES = (
    "velocity",
    "length",
    "straight_line",
    "monopole_north",
    "monopole_south",
    "disk_p1",
    "disk_p2",
    "eblock_p1",
    "eblock_p2",
)


def builtin_path(name: str, **params) -> PathFamily:
    """Construct a named path family.

    Parameters by family:
      velocity, length, straight_line -- start at the origin.
      monopole_north, monopole_south -- ``far_radius`` (default 1e4); start at
        (0, R, 0, -R).  The closed forms of these families hold for z > 0.
      disk_p1, disk_p2 -- ``far_radius`` (default 1e4), ``loop_half_width``
        (default 2.0, must exceed the disk radius for disk_p2 to enclose it).
      eblock_p1, eblock_p2 -- ``dt``, ``dx``, ``c`` and ``margin`` (block
        geometry for the enclosing loop of eblock_p2).
    """
    origin = Waypoint.fixed(np.zeros(4))
    if name == "velocity":
        return chain([origin, Waypoint.linear([0, 1, 1, 1]), IDENTITY], np.zeros(4), name)
    if name == "length":
        return chain([origin, Waypoint.linear([1, 0, 0, 0]), IDENTITY], np.zeros(4), name)
    if name == "straight_line":
        return chain([origin, IDENTITY], np.zeros(4), name)

    if name in ("monopole_north", "monopole_south"):
        R = float(params.get("far_radius", 1e4))
        x0 = np.array([0.0, R, 0.0, -R])
        start = Waypoint.fixed(x0)
        if name == "monopole_north":
            # x0 -> (0,0,-z) -> (x,0,-z) -> (x,0,z) -> (0,0,z) -> x
            wps = [
                start,
                Waypoint.linear([1, 0, 0, -1]),
                Waypoint.linear([1, 1, 0, -1]),
                Waypoint.linear([1, 1, 0, 1]),
                Waypoint.linear([1, 0, 0, 1]),
                IDENTITY,
            ]
        else:
            # x0 -> (0,0,-z) -> (x,y,-z) -> x
            wps = [start, Waypoint.linear([1, 0, 0, -1]), Waypoint.linear([1, 1, 1, -1]), IDENTITY]
        return chain(wps, x0, name, validator=_axis_clearance)

    if name in ("disk_p1", "disk_p2"):
        R = float(params.get("far_radius", 1e4))
        L = float(params.get("loop_half_width", 2.0))
        x0 = np.array([0.0, R, R, 0.0])
        t_only = [1, 0, 0, 0]
        wps = [Waypoint.fixed(x0), Waypoint.affine(t_only, [0, R, 0, 0])]
        if name == "disk_p2":
            corners = [(L, 0), (L, L), (-L, L), (-L, -L), (L, -L), (L, 0)]
            wps += [Waypoint.affine(t_only, [0, cx, cy, 0]) for cx, cy in corners]
        wps += [Waypoint.linear([1, 1, 0, 0]), Waypoint.linear(t_only), IDENTITY]
        return chain(wps, x0, name)

    if name == "eblock_p1":
        return chain([origin, IDENTITY], np.zeros(4), name)
    if name == "eblock_p2":
        cdt = float(params.get("c", 1.0)) * float(params.get("dt", 1.0))
        dx = float(params.get("dx", 1.0))
        m = float(params.get("margin", 0.5 * min(cdt, dx)))
        corners = [(-m, 0), (-m, -m), (cdt + m, -m), (cdt + m, dx + m), (-m, dx + m), (-m, 0), (0, 0)]
        wps = [origin] + [Waypoint.fixed([t, xx, 0, 0]) for t, xx in corners] + [IDENTITY]
        return chain(wps, np.zeros(4), name)

    raise PathError(f"unknown builtin path {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


@dataclass(frozen=True, eq=False)
class LoopSpec:
    """Closed loop path_a followed by path_b reversed, wound ``winding`` times."""

    path_a: PathFamily
    path_b: PathFamily
    winding: int = 1

    def __post_init__(self):
        if int(self.winding) != self.winding or self.winding < 1:
            raise PathError(f"winding must be a positive integer, got {self.winding}")
        if not np.allclose(self.path_a.x0, self.path_b.x0, rtol=0, atol=1e-12):
            raise PathError(f"loop paths start at different points {self.path_a.x0} and {self.path_b.x0}")


def concatenate_winding(loop: LoopSpec, x=None) -> PathFamily:
    """path_b, then ``winding`` times around (path_a reversed, path_b).

    The result runs from x0 to x like its constituents.  If ``x`` is given the
    shared endpoint is checked there.
    """
    a, b = loop.path_a, loop.path_b
    if x is not None:
        ya = a.segments[-1].point(1.0, x)[0]
        yb = b.segments[-1].point(1.0, x)[0]
        if np.max(np.abs(ya - yb)) > 1e-12 * max(1.0, float(np.max(np.abs(x)))):
            raise PathError("loop paths do not share their end point")
    turn = a.reversed() + list(b.segments)
    segs = list(b.segments) + turn * int(loop.winding)
    return PathFamily(
        segs, b.x0, name=f"{b.name}+{loop.winding}x({a.name}^-1 {b.name})", jacobian_mode=b.jacobian_mode
    )
