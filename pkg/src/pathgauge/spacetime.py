"""Minkowski-space conventions and physical constants.

Four-vectors are plain ``numpy`` arrays holding contravariant components
``(x0, x1, x2, x3) = (ct, x, y, z)``.  The metric is ``diag(+1, -1, -1, -1)``.
Functions here accept a single vector of shape ``(4,)`` or a stack ``(..., 4)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

METRIC_DIAG = np.array([1.0, -1.0, -1.0, -1.0])
METRIC = np.diag(METRIC_DIAG)


def four_vector(*components) -> np.ndarray:
    """Build a contravariant four-vector, rejecting non-finite input.

    Accepts either four scalars or one length-4 sequence.
    """
    if len(components) == 1:
        components = components[0]
    v = np.asarray(components, dtype=float)
    if v.shape != (4,):
        raise ValueError(f"a four-vector needs 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"four-vector components must be finite, got {v}")
    return v


def lower(v):
    """Return covariant components v_mu = g_{mu nu} v^nu."""
    return np.asarray(v, dtype=float) * METRIC_DIAG


# raising and lowering are the same operation for a diagonal +-1 metric
raise_index = lower


def minkowski_dot(a, b):
    """a^0 b^0 - a^1 b^1 - a^2 b^2 - a^3 b^3 (broadcasts over leading axes)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2] - a[..., 3] * b[..., 3]


@dataclass(frozen=True)
class Constants:
    """Unit system: reduced Planck constant, speed of light, elementary charge."""

    hbar: float = 1.0
    c: float = 1.0
    e: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c", "e"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"constant {name} must be finite and > 0, got {value!r}")

    def with_charge(self, e: float) -> "Constants":
        return Constants(hbar=self.hbar, c=self.c, e=e)

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c


NATURAL = Constants()
# Gaussian CGS: erg s, cm/s, statC
CGS = Constants(hbar=1.054571817e-27, c=2.99792458e10, e=4.803204712570263e-10)

PRESETS = {"natural": NATURAL, "cgs": CGS}
