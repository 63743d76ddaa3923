"""Path-dependent potentials from the field-strength tensor.

For a path family y(s, x) with y(0, x) = x0 and y(1, x) = x,

    A_mu(P, x) = int_0^1 F_{nu lam}(y) (dy^nu/ds) (dy^lam/dx^mu) ds

and the antisymmetrised form averages the two index orderings.  Results are
covariant components; :attr:`PotentialSample.contravariant` raises the index.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import PathError
from .quadrature import DEFAULT_MAX_DEPTH, DEFAULT_ORDER, DEFAULT_TOL, adaptive_gauss_legendre, find_crossings
from .spacetime import Constants, four_vector, lower

FORMS = ("plain", "antisymmetrized")


@dataclass(frozen=True, eq=False)
class PotentialSample:
    x: np.ndarray
    A: np.ndarray
    err_estimate: float
    path_id: str

    @property
    def contravariant(self) -> np.ndarray:
        return lower(self.A)


def segment_breaks(discontinuities, segment, x, samples=64):
    """Local parameters where a segment crosses any declared jump surface."""
    cuts = []
    for d in discontinuities:
        cuts.extend(find_crossings(lambda sig: d(segment.point(sig, x)), 0.0, 1.0, samples=samples))
    return sorted(set(cuts))


def potential_at(
    field,
    path,
    x,
    form: str = "plain",
    *,
    order: int = DEFAULT_ORDER,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> PotentialSample:
    """Quadrature of the field along ``path`` ending at ``x``.

    Each segment is integrated separately and split where it crosses a jump
    surface of ``field``.  Raises SingularFieldError if the path enters a
    singular guard zone and QuadratureError on non-convergence.
    """
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    x = four_vector(x)
    path.validate(x)
    total = np.zeros(4)
    err = 0.0
    for k, seg in enumerate(path.segments):

        def integrand(sig, k=k, seg=seg):
            y = seg.point(sig, x)
            F = field.tensor(y)
            d, J = path.segment_derivatives(k, sig, x)
            out = np.einsum("nab,na,nbm->nm", F, d, J)
            if form == "antisymmetrized":
                out = 0.5 * (out - np.einsum("nab,nb,nam->nm", F, d, J))
            return out

        breaks = segment_breaks(field.discontinuities, seg, x)
        value, e = adaptive_gauss_legendre(
            integrand, 0.0, 1.0, order=order, tol=tol, max_depth=max_depth, breakpoints=breaks
        )
        total += value
        err += e
    return PotentialSample(x=x, A=total, err_estimate=err, path_id=path.name)


def _workers(workers):
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get("PATHGAUGE_THREADS", "1")))


def potential_grid(field, path, grid, form="plain", *, workers=None, **kw) -> list[PotentialSample]:
    """potential_at over many points; order of results follows ``grid``."""
    pts = [four_vector(p) for p in grid]
    n = _workers(workers)
    if n == 1:
        return [potential_at(field, path, p, form, **kw) for p in pts]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda p: potential_at(field, path, p, form, **kw), pts))


def potential_function(field, path, **kw):
    """Vectorised covariant potential y -> A_mu(path, y) for stacks of points."""

    def fn(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.array([potential_at(field, path, p, **kw).A for p in pts])

    return fn


@dataclass(frozen=True)
class GaugeReport:
    max_dev: float
    mean_dev: float
    n_points: int


def gauge_compare(field, path, closed_form, grid, *, workers=None, **kw) -> GaugeReport:
    """Componentwise deviation between quadrature and a closed-form potential.

    ``closed_form(x)`` returns contravariant components, as the gauges are
    usually quoted.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("gauge_compare needs a nonempty grid")
    samples = potential_grid(field, path, grid, workers=workers, **kw)
    devs = np.array([np.max(np.abs(s.contravariant - np.asarray(closed_form(s.x)))) for s in samples])
    return GaugeReport(max_dev=float(devs.max()), mean_dev=float(devs.mean()), n_points=len(samples))


def line_integral(potential_fn, segments, x, *, discontinuities=(), order=DEFAULT_ORDER, tol=DEFAULT_TOL,
                  max_depth=DEFAULT_MAX_DEPTH):
    """int A_mu dy^mu over a list of segments evaluated at ``x``.

    ``potential_fn`` maps a stack of points (n, 4) to covariant components.
    Returns ``(value, error_estimate)``.
    """
    x = np.asarray(x, dtype=float)
    total, err = 0.0, 0.0
    for seg in segments:

        def integrand(sig, seg=seg):
            A = np.asarray(potential_fn(seg.point(sig, x)))
            return np.einsum("na,na->n", A, seg.dyds(sig, x))

        breaks = segment_breaks(discontinuities, seg, x)
        value, e = adaptive_gauss_legendre(
            integrand, 0.0, 1.0, order=order, tol=tol, max_depth=max_depth, breakpoints=breaks
        )
        total += float(value)
        err += e
    return total, err


@dataclass(frozen=True, eq=False)
class TransformResult:
    lhs: np.ndarray
    rhs: np.ndarray
    flux: float

    @property
    def max_dev(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs)))


def path_transform(field, path_a, path_b, x, probe_step: float = 1e-3, **kw) -> TransformResult:
    """Compare A(path_b, x) - A(path_a, x) with the gradient of the connecting flux.

    The flux is taken through the linear-homotopy surface between the paths
    (loop: path_a, then path_b reversed) and differentiated by central
    differences with step ``probe_step``.
    """
    from .flux import flux_surface, homotopy_surface

    x = four_vector(x)
    for d in field.discontinuities:
        stencil = np.array([x + sgn * probe_step * e for e in np.eye(4) for sgn in (1.0, -1.0)] + [x])
        signs = np.sign(d(stencil))
        if np.any(signs == 0) or np.any(signs != signs[-1]):
            raise PathError(f"a field discontinuity lies within probe_step={probe_step} of {x}")
    lhs = potential_at(field, path_b, x, **kw).A - potential_at(field, path_a, x, **kw).A

    def phi(p):
        return flux_surface(field, homotopy_surface(path_a, path_b, p)).value

    rhs = np.array([(phi(x + probe_step * e) - phi(x - probe_step * e)) / (2 * probe_step) for e in np.eye(4)])
    return TransformResult(lhs=lhs, rhs=rhs, flux=phi(x))


def nonintegrable_phase(path, x, constants: Constants, *, potential=None, field=None, reference=None,
                        segments=None, **kw) -> complex:
    """exp(-i e / (hbar c) int A_nu dy^nu) along ``path`` ending at ``x``.

    ``potential`` is a vectorised covariant potential.  If omitted it is built
    from ``field`` with ``reference`` as the defining path family (default:
    straight lines from the field's x0).  ``segments`` overrides the
    integration contour, e.g. a closed loop.
    """
    if potential is None:
        if field is None:
            raise ValueError("either a potential or a field is required")
        if reference is None:
            from .paths import AffineSegment, IDENTITY, PathFamily, Waypoint

            reference = PathFamily([AffineSegment(Waypoint.fixed(field.x0), IDENTITY)], field.x0, "straight_from_x0")
        potential = potential_function(field, reference)
    contour = path.segments if segments is None else segments
    integral, _ = line_integral(potential, contour, x, **kw)
    return complex(np.exp(-1j * constants.e * integral / constants.hbar_c))
