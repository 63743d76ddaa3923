"""Electromagnetic flux by loop, surface and open-path integrals.

Orientation: for a loop made of ``path_a`` followed by ``path_b`` reversed the
loop route returns ``int_a A.dy - int_b A.dy``.  The surface route integrates
``F_{mu nu} (dy^mu/du) (dy^nu/dv)`` over a parametrised square, which by
Stokes equals the loop integral around the boundary traversed as
``v = 0`` forward, ``v = 1`` backward.  For purely spatial loops
``A_mu dy^mu = -A.dl``, so this flux is minus the magnetic flux through the
surface normal ``d_u y x d_v y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .potential import line_integral, potential_function
from .quadrature import DEFAULT_ORDER, DEFAULT_TOL, adaptive_gauss_legendre, find_crossings

SURFACE_TOL = 1e-9
SURFACE_MAX_DEPTH = 30
SURFACE_ORDER = 16
FULL_SPHERE_SPLIT = 1e-8


@dataclass(frozen=True)
class FluxResult:
    value: float
    route: str
    err_estimate: float
    warning: str | None = None


@dataclass(frozen=True, eq=False)
class SurfaceSpec:
    """A map (u, v) in [0, 1]^2 -> spacetime, with its tangent vectors.

    ``point``, ``du`` and ``dv`` take equal-length arrays u, v and return (n, 4).
    ``u_breaks`` / ``v_breaks`` are parameter values where tangents jump.
    """

    name: str
    point: Callable
    du: Callable
    dv: Callable
    u_breaks: tuple = ()
    v_breaks: tuple = ()
    meta: dict = field(default_factory=dict)


def homotopy_surface(path_a, path_b, x) -> SurfaceSpec:
    """y(u, v) = (1 - v) a(u) + v b(u): spans path_a (v=0) to path_b (v=1)."""
    x = np.asarray(x, dtype=float)

    def parts(u):
        ya, da = path_a.evaluate(u, x)
        yb, db = path_b.evaluate(u, x)
        return ya, da, yb, db

    def point(u, v):
        ya, _, yb, _ = parts(u)
        v = np.asarray(v, dtype=float)[:, None]
        return (1.0 - v) * ya + v * yb

    def du(u, v):
        _, da, _, db = parts(u)
        v = np.asarray(v, dtype=float)[:, None]
        return (1.0 - v) * da + v * db

    def dv(u, v):
        ya, _, yb, _ = parts(u)
        return yb - ya

    junctions = {k / path_a.n_segments for k in range(1, path_a.n_segments)}
    junctions |= {k / path_b.n_segments for k in range(1, path_b.n_segments)}
    return SurfaceSpec(f"homotopy({path_a.name},{path_b.name})", point, du, dv, u_breaks=tuple(sorted(junctions)))


def sphere_slice(radius: float, phi_end: float, phi_start: float = 0.0) -> SurfaceSpec:
    """Spherical lune between azimuths phi_start and phi_end, pole to pole.

    u runs over azimuth and v over polar angle, so ``d_u y x d_v y`` points
    inward and the returned flux equals the outward magnetic flux.
    """
    span = phi_end - phi_start

    def angles(u, v):
        return phi_start + span * np.asarray(u, dtype=float), np.pi * np.asarray(v, dtype=float)

    def point(u, v):
        ph, th = angles(u, v)
        return np.stack([np.zeros_like(ph), radius * np.sin(th) * np.cos(ph),
                         radius * np.sin(th) * np.sin(ph), radius * np.cos(th)], axis=-1)

    def du(u, v):
        ph, th = angles(u, v)
        return span * np.stack([np.zeros_like(ph), -radius * np.sin(th) * np.sin(ph),
                                radius * np.sin(th) * np.cos(ph), np.zeros_like(ph)], axis=-1)

    def dv(u, v):
        ph, th = angles(u, v)
        return np.pi * np.stack([np.zeros_like(ph), radius * np.cos(th) * np.cos(ph),
                                 radius * np.cos(th) * np.sin(ph), -radius * np.sin(th)], axis=-1)

    return SurfaceSpec(f"sphere_slice(R={radius:g},{phi_start:g}..{phi_end:g})", point, du, dv,
                       meta={"radius": radius, "phi_start": phi_start, "phi_end": phi_end})


def rectangle_surface(corner, edge_u, edge_v) -> SurfaceSpec:
    """Flat parallelogram corner + u edge_u + v edge_v."""
    corner = np.asarray(corner, dtype=float)
    eu = np.asarray(edge_u, dtype=float)
    ev = np.asarray(edge_v, dtype=float)

    def point(u, v):
        return corner + np.asarray(u, dtype=float)[:, None] * eu + np.asarray(v, dtype=float)[:, None] * ev

    def du(u, v):
        return np.broadcast_to(eu, (np.size(u), 4)).copy()

    def dv(u, v):
        return np.broadcast_to(ev, (np.size(u), 4)).copy()

    return SurfaceSpec("rectangle", point, du, dv)


def _surface_integrand(field, surface, u, v):
    F = field.tensor(surface.point(u, v))
    return np.einsum("nab,na,nb->n", F, surface.du(u, v), surface.dv(u, v))


def flux_surface(field, surface: SurfaceSpec, *, order: int = SURFACE_ORDER, tol: float = SURFACE_TOL,
                 max_depth: int = SURFACE_MAX_DEPTH) -> FluxResult:
    """Iterated adaptive Gauss-Legendre over the square, split at jump surfaces.

    Outer breaks in u come from junctions and from crossings of each jump
    surface along a few v = const lines; inner breaks in v are found per u.
    """
    disc = field.discontinuities
    u_breaks = set(surface.u_breaks)
    for d in disc:
        for v_line in (0.0, 0.25, 0.5, 0.75, 1.0):
            g = lambda u, v_line=v_line, d=d: d(surface.point(u, np.full(np.size(u), v_line)))
            u_breaks.update(find_crossings(g, 0.0, 1.0))

    inner_errs = []
    inner_tol = 0.01 * tol

    def inner(u):
        v_breaks = set(surface.v_breaks)
        for d in disc:
            v_breaks.update(find_crossings(lambda v: d(surface.point(np.full(np.size(v), u), v)), 0.0, 1.0))
        value, err = adaptive_gauss_legendre(
            lambda v: _surface_integrand(field, surface, np.full(np.size(v), u), v),
            0.0, 1.0, order=order, tol=inner_tol, max_depth=max_depth, breakpoints=v_breaks,
        )
        inner_errs.append(err)
        return float(value)

    value, err = adaptive_gauss_legendre(
        lambda us: np.array([inner(u) for u in us]),
        0.0, 1.0, order=order, tol=tol, max_depth=max_depth, breakpoints=u_breaks, noise=2 * inner_tol,
    )
    err_total = err + (float(np.mean(inner_errs)) if inner_errs else 0.0)
    return FluxResult(float(value), "surface", err_total)


def full_sphere_flux(field, radius: float, split: float = FULL_SPHERE_SPLIT, **kw) -> FluxResult:
    """Closed-sphere flux as the limit of lunes: [0, 2 pi - split] plus the sliver."""
    main = flux_surface(field, sphere_slice(radius, 2 * np.pi - split), **kw)
    sliver = flux_surface(field, sphere_slice(radius, 2 * np.pi, 2 * np.pi - split), **kw)
    return FluxResult(main.value + sliver.value, "surface", main.err_estimate + sliver.err_estimate)


def slice_sweep(field, phis, radius: float = 1.0, **kw) -> list[FluxResult]:
    return [flux_surface(field, sphere_slice(radius, phi), **kw) for phi in phis]


def flux_loop(potential_fn, loop, x, *, discontinuities=(), order: int = DEFAULT_ORDER,
              tol: float = DEFAULT_TOL) -> FluxResult:
    """winding * (int over path_a - int over path_b) of a supplied covariant potential."""
    x = np.asarray(x, dtype=float)
    ia, ea = line_integral(potential_fn, loop.path_a.segments, x, discontinuities=discontinuities,
                           order=order, tol=tol)
    ib, eb = line_integral(potential_fn, loop.path_b.segments, x, discontinuities=discontinuities,
                           order=order, tol=tol)
    n = int(loop.winding)
    return FluxResult(n * (ia - ib), "loop", n * (ea + eb))


def flux_open(field, path_a, path_b, x, *, order: int = DEFAULT_ORDER, tol: float = DEFAULT_TOL) -> FluxResult:
    """int along path_a of A(path_b, .) dy.

    Equals the loop flux for nonconfined fields.  For confined fields the value
    is still returned, flagged with a warning.
    """
    pot = potential_function(field, path_b, order=order, tol=tol)
    value, err = line_integral(pot, path_a.segments, x, discontinuities=field.discontinuities,
                               order=order, tol=tol)
    warning = None
    if field.confined:
        warning = "confined field: the open-path integral need not equal the enclosed flux"
    return FluxResult(value, "open", err, warning)
