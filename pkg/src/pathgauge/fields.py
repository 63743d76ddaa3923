"""Field-strength tensor configurations.

A :class:`FieldConfig` evaluates the covariant tensor ``F_{mu nu}(y)`` on a
stack of points ``y`` of shape ``(n, 4)`` and returns shape ``(n, 4, 4)``.
Electric and magnetic components follow ``F^{i0} = E^i`` and
``F_{ij} = -eps_{ijk} B^k``, so that ``F_{0i} = E^i`` and ``F_{12} = -B^3``.

Step functions take the value 1/2 exactly on their jump surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import SingularFieldError
from .spacetime import four_vector

SINGULAR_GUARD = 1e-9


def step(v):
    """Heaviside step with step(0) = 1/2."""
    v = np.asarray(v, dtype=float)
    return np.where(v > 0, 1.0, np.where(v < 0, 0.0, 0.5))


def tensor_from_fields(E, B) -> np.ndarray:
    """Assemble covariant F_{mu nu} from stacks of E and B vectors, shape (n, 3)."""
    E = np.atleast_2d(np.asarray(E, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    n = max(E.shape[0], B.shape[0])
    F = np.zeros((n, 4, 4))
    F[:, 0, 1:] = E
    F[:, 1:, 0] = -E
    F[:, 1, 2] = -B[:, 2]
    F[:, 2, 1] = B[:, 2]
    F[:, 1, 3] = B[:, 1]
    F[:, 3, 1] = -B[:, 1]
    F[:, 2, 3] = -B[:, 0]
    F[:, 3, 2] = B[:, 0]
    return F


def electric_part(F) -> np.ndarray:
    return np.asarray(F)[..., 0, 1:]


def magnetic_part(F) -> np.ndarray:
    F = np.asarray(F)
    return np.stack([-F[..., 2, 3], F[..., 1, 3], -F[..., 1, 2]], axis=-1)


@dataclass(frozen=True)
class SingularLocus:
    """A set where the field is singular, given by a distance function."""

    description: str
    distance: Callable[[np.ndarray], np.ndarray]
    guard: float = SINGULAR_GUARD


@dataclass(frozen=True, eq=False)
class FieldConfig:
    """An immutable field-strength configuration.

    ``discontinuities`` are implicit functions ``d(y)`` whose zero sets are the
    jump surfaces of the field; quadrature splits segments where they change sign.
    """

    name: str
    tensor_fn: Callable[[np.ndarray], np.ndarray]
    x0: np.ndarray
    discontinuities: tuple = ()
    singular_loci: tuple = ()
    confined: bool = False
    params: dict = field(default_factory=dict)

    def tensor(self, y) -> np.ndarray:
        """Covariant F_{mu nu} at one point (4,) or a stack (n, 4)."""
        y = np.asarray(y, dtype=float)
        single = y.ndim == 1
        pts = np.atleast_2d(y)
        for locus in self.singular_loci:
            d = np.asarray(locus.distance(pts))
            if np.any(d < locus.guard):
                bad = pts[np.argmin(d)]
                raise SingularFieldError(
                    f"{self.name}: evaluation at {bad} is within {locus.guard:g} of {locus.description}"
                )
        F = self.tensor_fn(pts)
        return F[0] if single else F

    def contravariant(self, y) -> np.ndarray:
        F = self.tensor(y)
        g = np.array([1.0, -1.0, -1.0, -1.0])
        return F * g[:, None] * g[None, :]

    def electric(self, y) -> np.ndarray:
        return electric_part(self.tensor(y))

    def magnetic(self, y) -> np.ndarray:
        return magnetic_part(self.tensor(y))


def _spatial(pts):
    return pts[:, 1:]


def uniform_field(E0=(0.0, 0.0, 0.0), B0=(0.0, 0.0, 0.0)) -> FieldConfig:
    """Constant, uniform E and B.  x0 is the origin by convention.

    The field does not vanish at x0; uniform configurations waive that
    requirement and use the origin as the common starting point of paths.
    """
    E0 = np.asarray(E0, dtype=float).reshape(3)
    B0 = np.asarray(B0, dtype=float).reshape(3)
    F0 = tensor_from_fields(E0, B0)[0]

    def fn(pts):
        return np.broadcast_to(F0, (pts.shape[0], 4, 4)).copy()

    return FieldConfig(
        name="uniform",
        tensor_fn=fn,
        x0=four_vector(0, 0, 0, 0),
        params={"E0": E0.tolist(), "B0": B0.tolist()},
    )


def uniform_electric(E0) -> FieldConfig:
    return replace(uniform_field(E0=E0), name="uniform_electric")


def uniform_magnetic(B0) -> FieldConfig:
    return replace(uniform_field(B0=B0), name="uniform_magnetic")


def zero_field() -> FieldConfig:
    return replace(uniform_field(), name="zero")


def monopole(g: float, far_radius: float = 1e4) -> FieldConfig:
    """Static magnetic monopole of charge g at the spatial origin, B = g r_hat / r^2.

    x0 is the far point (0, R, 0, -R) used by the monopole path families.
    """
    if g == 0:
        raise ValueError("monopole charge must be nonzero")

    def fn(pts):
        r_vec = _spatial(pts)
        r = np.linalg.norm(r_vec, axis=1)
        B = g * r_vec / r[:, None] ** 3
        return tensor_from_fields(np.zeros_like(B), B)

    origin = SingularLocus("the monopole at r = 0", lambda pts: np.linalg.norm(_spatial(pts), axis=1))
    return FieldConfig(
        name="monopole",
        tensor_fn=fn,
        x0=four_vector(0.0, far_radius, 0.0, -far_radius),
        singular_loci=(origin,),
        params={"g": float(g)},
    )


def confined_magnetic_disk(B0: float, r0: float, far_radius: float | None = None) -> FieldConfig:
    """B = B0 z_hat inside the cylinder sqrt(x^2 + y^2) <= r0, zero outside."""
    if B0 == 0:
        raise ValueError("B0 must be nonzero")
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    R = 1e4 * r0 if far_radius is None else far_radius

    def rho(pts):
        return np.hypot(pts[:, 1], pts[:, 2])

    def fn(pts):
        Bz = B0 * (1.0 - step(rho(pts) - r0))
        B = np.zeros((pts.shape[0], 3))
        B[:, 2] = Bz
        return tensor_from_fields(np.zeros_like(B), B)

    return FieldConfig(
        name="confined_magnetic_disk",
        tensor_fn=fn,
        x0=four_vector(0.0, R, R, 0.0),
        discontinuities=(lambda pts: rho(pts) - r0,),
        confined=True,
        params={"B0": float(B0), "r0": float(r0)},
    )


def confined_electric_block(E0: float, dt: float, dx: float, c: float = 1.0) -> FieldConfig:
    """E = E0 x_hat for 0 <= ct <= c dt and 0 <= x <= dx, zero elsewhere.

    x0 is the origin (a corner of the block), matching the straight-line
    construction of the piecewise potential.
    """
    if E0 == 0:
        raise ValueError("E0 must be nonzero")
    if not (dt > 0 and dx > 0):
        raise ValueError("dt and dx must be positive")
    cdt = c * dt

    def fn(pts):
        window = (step(pts[:, 0]) - step(pts[:, 0] - cdt)) * (step(pts[:, 1]) - step(pts[:, 1] - dx))
        E = np.zeros((pts.shape[0], 3))
        E[:, 0] = E0 * window
        return tensor_from_fields(E, np.zeros_like(E))

    return FieldConfig(
        name="confined_electric_block",
        tensor_fn=fn,
        x0=four_vector(0, 0, 0, 0),
        discontinuities=(
            lambda pts: pts[:, 0],
            lambda pts: pts[:, 0] - cdt,
            lambda pts: pts[:, 1],
            lambda pts: pts[:, 1] - dx,
        ),
        confined=True,
        params={"E0": float(E0), "dt": float(dt), "dx": float(dx), "c": float(c)},
    )
