"""Adaptive Gauss-Legendre quadrature and crossing search on an interval.

The integrators take vectorised integrands ``f(t) -> array`` where ``t`` has
shape ``(n,)`` and the result has shape ``(n, ...)``.  Values may be vectors
(for example the four components of a potential).
"""
from __future__ import annotations

import heapq
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import QuadratureError

DEFAULT_ORDER = 32
DEFAULT_TOL = 1e-10
DEFAULT_MAX_DEPTH = 20
_EPS = np.finfo(float).eps


@lru_cache(maxsize=None)
def unit_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_legendre(f, a: float, b: float, order: int = DEFAULT_ORDER):
    """Fixed-order Gauss-Legendre estimate of the integral of f over [a, b]."""
    x, w = unit_rule(order)
    h = b - a
    vals = np.asarray(f(a + h * x))
    return h * np.tensordot(w, vals, axes=(0, 0))


def _embedded_pair(f, a, b, order):
    hi_x, hi_w = unit_rule(order)
    lo_x, lo_w = unit_rule(max(order // 2, 1))
    h = b - a
    nodes = a + h * np.concatenate([hi_x, lo_x])
    vals = np.asarray(f(nodes))
    n = hi_x.size
    hi = h * np.tensordot(hi_w, vals[:n], axes=(0, 0))
    lo = h * np.tensordot(lo_w, vals[n:], axes=(0, 0))
    # roundoff floor of the high-order sum
    floor = 50.0 * _EPS * abs(h) * np.max(np.tensordot(hi_w, np.abs(vals[:n]), axes=(0, 0)), initial=0.0)
    return hi, float(np.max(np.abs(hi - lo), initial=0.0)), floor


def adaptive_gauss_legendre(
    f,
    a: float,
    b: float,
    *,
    order: int = DEFAULT_ORDER,
    tol: float = DEFAULT_TOL,
    rel_tol: float = 1e-12,
    max_depth: int = DEFAULT_MAX_DEPTH,
    breakpoints=(),
    noise: float = 0.0,
):
    """Integrate f over [a, b] by bisection on an embedded (order, order/2) pair.

    The interval is first split at ``breakpoints`` that fall strictly inside it.
    Refinement is global: the sub-interval with the largest error estimate
    ``|I_order - I_order/2|`` is bisected until the summed estimate drops below
    ``max(tol, rel_tol * |I|)``.  Intervals whose estimate is at the roundoff
    floor, or below ``noise * width`` (``noise`` being the absolute accuracy of
    f itself, e.g. an inner quadrature), are not refined further.
    Returns ``(value, error_estimate)``.  Raises QuadratureError when an
    interval that still needs refinement is ``max_depth`` bisections deep.
    """
    if b == a:
        probe = np.asarray(f(np.array([a])))
        return np.zeros(probe.shape[1:]), 0.0
    cuts = sorted({float(p) for p in breakpoints if a < p < b})
    edges = [a, *cuts, b]

    # heap entries: (-err, lo, hi, depth, value); ties broken by position for determinism
    heap = []
    settled = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi > lo:
            _push(f, lo, hi, 0, order, noise, heap, settled)

    while heap:
        total = _sum_values(heap, settled)
        err_total = sum(-h[0] for h in heap) + sum(e for _, e, _ in settled)
        target = max(tol, rel_tol * float(np.max(np.abs(total), initial=0.0)))
        if err_total <= target:
            break
        neg_err, lo, hi, depth, _ = heapq.heappop(heap)
        if depth >= max_depth:
            raise QuadratureError(
                f"no convergence on [{lo:.6g}, {hi:.6g}] after {max_depth} bisections "
                f"(error estimate {-neg_err:.3e}, total {err_total:.3e} > {target:.3e})"
            )
        mid = 0.5 * (lo + hi)
        _push(f, lo, mid, depth + 1, order, noise, heap, settled)
        _push(f, mid, hi, depth + 1, order, noise, heap, settled)

    total = _sum_values(heap, settled)
    err_total = sum(-h[0] for h in heap) + sum(e for _, e, _ in settled)
    return total, float(err_total)


def _push(f, lo, hi, depth, order, noise, heap, settled):
    value, err, floor = _embedded_pair(f, lo, hi, order)
    if err <= max(floor, noise * (hi - lo)):
        settled.append((lo, err, value))
    else:
        heapq.heappush(heap, (-err, lo, hi, depth, value))


def _sum_values(heap, settled):
    # sum in order of position so the result does not depend on heap layout
    items = sorted([(h[1], h[4]) for h in heap] + [(lo, v) for lo, _, v in settled], key=lambda t: t[0])
    total = items[0][1]
    for _, v in items[1:]:
        total = total + v
    return total


def find_crossings(g, a: float, b: float, *, samples: int = 64, xtol: float = 1e-12) -> list[float]:
    """Locate sign changes of a scalar vectorised function g strictly inside (a, b).

    g is sampled on a uniform grid.  Discrete local extrema of the samples are
    refined with a bounded scalar minimisation and added to the grid, so a
    near-tangent pair of crossings inside one sampling cell is still
    bracketed.  Each bracketed sign change is refined with Brent's method to
    ``xtol``.  Exact zeros at interior grid points are kept.
    """
    t = np.linspace(a, b, samples + 1)
    vals = np.asarray(g(t), dtype=float)
    scalar = lambda s: float(np.asarray(g(np.array([s])))[0])

    extra_t, extra_v = [], []
    for i in range(1, samples):
        left, mid, right = vals[i - 1], vals[i], vals[i + 1]
        if mid <= min(left, right) or mid >= max(left, right):
            if mid == left == right:
                continue
            sign = 1.0 if mid <= min(left, right) else -1.0
            res = minimize_scalar(lambda s: sign * scalar(s), bounds=(t[i - 1], t[i + 1]),
                                  method="bounded", options={"xatol": xtol})
            if t[i - 1] < res.x < t[i + 1] and res.x != t[i]:
                extra_t.append(float(res.x))
                extra_v.append(sign * float(res.fun))
    if extra_t:
        t = np.concatenate([t, extra_t])
        vals = np.concatenate([vals, extra_v])
        order = np.argsort(t, kind="stable")
        t, vals = t[order], vals[order]

    roots = []
    for i in range(t.size - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            if a < t[i] < b:
                roots.append(float(t[i]))
            continue
        if vb != 0.0 and np.sign(va) != np.sign(vb):
            roots.append(brentq(scalar, t[i], t[i + 1], xtol=xtol))
    return sorted(set(roots))
