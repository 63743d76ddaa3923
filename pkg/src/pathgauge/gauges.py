"""Closed-form potentials for the builtin path families.

Each factory returns ``x -> A^mu(x)`` with contravariant components.
"""
from __future__ import annotations

import numpy as np


def velocity(E0):
    E0 = np.asarray(E0, dtype=float)
    return lambda x: np.concatenate([[0.0], -x[0] * E0])


def length(E0):
    E0 = np.asarray(E0, dtype=float)
    return lambda x: np.concatenate([[-np.dot(x[1:], E0)], np.zeros(3)])


def fock_schwinger(E0):
    E0 = np.asarray(E0, dtype=float)
    return lambda x: np.concatenate([[-0.5 * np.dot(x[1:], E0)], -0.5 * x[0] * E0])


def symmetric_magnetic(B0):
    """A = B x r / 2 for uniform B (the straight-line result)."""
    B0 = np.asarray(B0, dtype=float)
    return lambda x: np.concatenate([[0.0], 0.5 * np.cross(B0, x[1:])])


def monopole_north(g):
    def fn(x):
        _, X, Y, Z = x
        r = np.sqrt(X * X + Y * Y + Z * Z)
        k = g / (X * X + Y * Y)
        return np.array([0.0, k * Y * (Z / r - 1.0), k * X * (1.0 - Z / r), 0.0])

    return fn


def monopole_south(g):
    def fn(x):
        _, X, Y, Z = x
        r = np.sqrt(X * X + Y * Y + Z * Z)
        k = g / (X * X + Y * Y)
        return np.array([0.0, k * Y * (1.0 + Z / r), -k * X * (1.0 + Z / r), 0.0])

    return fn


def disk(B0, r0):
    def fn(x):
        _, X, Y, _ = x
        rho2 = X * X + Y * Y
        scale = 0.5 * B0 if rho2 <= r0 * r0 else 0.5 * B0 * r0 * r0 / rho2
        return np.array([0.0, -scale * Y, scale * X, 0.0])

    return fn


def eblock(E0, dt, dx, c=1.0):
    """Straight-line potential of the confined electric block.

    Defined inside the block and in the two adjacent strips
    (x > dx with 0 < t < dt, and t > dt with 0 < x < dx); NaN elsewhere.
    """
    cdt = c * dt

    def fn(x):
        ct, X = x[0], x[1]
        if 0 <= X <= dx and 0 <= ct <= cdt:
            return np.array([-0.5 * E0 * X, -0.5 * E0 * ct, 0.0, 0.0])
        if X > dx and 0 < ct < cdt:
            return -0.5 * E0 * dx * dx * np.array([1.0 / X, ct / X**2, 0.0, 0.0])
        if 0 < X < dx and ct > cdt:
            return -0.5 * E0 * cdt * cdt * np.array([X / ct**2, 1.0 / ct, 0.0, 0.0])
        return np.full(4, np.nan)

    return fn


REGISTRY = {
    "velocity": velocity,
    "length": length,
    "fock_schwinger": fock_schwinger,
    "symmetric_magnetic": symmetric_magnetic,
    "monopole_north": monopole_north,
    "monopole_south": monopole_south,
    "disk": disk,
    "eblock": eblock,
}
