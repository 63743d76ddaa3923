"""Classical world lines under the Lorentz force, and the potential on them.

The equation of motion is

    d^2 y^mu / ds^2 = -(e / (m c)) F^mu_nu dy^nu/ds

which keeps ``dy/ds . dy/ds`` constant.  With ``u . u = c^2`` the parameter is
proper time.  Boundary-value families on s in [0, 1] use the same law
rescaled by ``|u| / c`` so that s stays affine in proper time whatever the
total proper time of the arc is.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationError, PathError, ShootingError
from .paths import PathFamily, Segment
from .potential import line_integral, potential_function
from .quadrature import adaptive_gauss_legendre
from .spacetime import METRIC_DIAG, NATURAL, Constants, four_vector, lower, minkowski_dot

DEFAULT_TOL = 1e-10
BVP_TOL = 1e-12
MAX_NEWTON = 30
CONDITION_LIMIT = 1e10
ACCEL_STEP = 1e-4
# steps per span at most 1/MIN_STEPS of it, so the dense interpolant stays at step accuracy
MIN_STEPS = 32


def _mixed(F):
    """F^mu_nu from covariant F_{mu nu}."""
    return METRIC_DIAG[..., :, None] * F


def _rhs(field, k, proper_time_scaled, c):
    def rhs(s, state):
        y, u = state[:4], state[4:]
        F = field.tensor(y)
        scale = k
        if proper_time_scaled:
            norm2 = minkowski_dot(u, u)
            if norm2 <= 0:
                raise IntegrationError(f"velocity {u} is not timelike")
            scale = k * np.sqrt(norm2) / c
        return np.concatenate([u, -scale * (_mixed(F) @ u)])

    return rhs


@dataclass(frozen=True, eq=False)
class WorldLine:
    """Dense solution of the equation of motion on ``s_span``."""

    field: object
    charge: float
    mass: float
    c: float
    s_span: tuple
    solution: object
    proper_time_scaled: bool = False

    def state(self, s) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return self.solution(s).T

    def position(self, s) -> np.ndarray:
        return self.state(s)[:, :4]

    def velocity(self, s) -> np.ndarray:
        return self.state(s)[:, 4:]

    def acceleration(self, s, h: float = ACCEL_STEP) -> np.ndarray:
        """d^2y/ds^2 by differencing the dense velocity (one Richardson step).

        Near the ends of the span one-sided stencils are avoided by shifting
        the stencil centre inside; the interpolant is smooth so this is exact
        to the stated order.
        """
        s = np.atleast_1d(np.asarray(s, dtype=float))
        lo, hi = self.s_span
        h = h * (hi - lo)
        centre = np.clip(s, lo + h, hi - h)
        shift = (s - centre)[:, None]

        def d1(step):
            return (self.velocity(centre + step) - self.velocity(centre - step)) / (2 * step)

        def d2(step):
            return (self.velocity(centre + step) - 2 * self.velocity(centre) + self.velocity(centre - step)) / step**2

        first = (4 * d1(0.5 * h) - d1(h)) / 3
        return first + shift * d2(h)

    @property
    def start(self) -> np.ndarray:
        return self.position(self.s_span[0])[0]

    @property
    def end(self) -> np.ndarray:
        return self.position(self.s_span[1])[0]

    def mass_shell_drift(self, n: int = 201) -> float:
        u = self.velocity(np.linspace(*self.s_span, n))
        norms = minkowski_dot(u, u)
        return float(np.max(np.abs(norms - norms[0])))


def integrate_worldline(field, y_init, u_init, s_span, tol: float = DEFAULT_TOL, *, charge: float = 1.0,
                        mass: float = 1.0, c: float = 1.0, proper_time_scaled: bool = False) -> WorldLine:
    """Adaptive explicit Runge-Kutta (DOP853) with dense output.

    Steps are capped at 1/32 of the span: the 7th-order interpolant is only
    as accurate as the step endpoints when steps are short.
    Raises IntegrationError on step-size underflow and lets SingularFieldError
    through when the trajectory enters a singular guard zone.
    """
    y_init = four_vector(y_init)
    u_init = four_vector(u_init)
    if not np.any(u_init):
        raise ValueError("u_init must be nonzero")
    if mass <= 0:
        raise ValueError("mass must be positive")
    s0, s1 = map(float, s_span)
    state0 = np.concatenate([y_init, u_init])
    scale = max(1.0, float(np.max(np.abs(state0))))
    k = charge / (mass * c)
    sol = solve_ivp(_rhs(field, k, proper_time_scaled, c), (s0, s1), state0, method="DOP853",
                    rtol=tol, atol=tol * scale, dense_output=True, max_step=abs(s1 - s0) / MIN_STEPS)
    if sol.status != 0:
        raise IntegrationError(f"world-line integration failed: {sol.message}")
    return WorldLine(field, charge, mass, c, (s0, s1), sol.sol, proper_time_scaled)


@dataclass(frozen=True, eq=False)
class ShootingResult:
    worldline: WorldLine
    u0: np.ndarray
    jacobian: np.ndarray  # d y(1) / d u0
    probes: tuple  # (plus, minus) world lines per u0 component, for sensitivities
    step: float
    iterations: int


def shoot(field, x0, x, *, charge: float = 1.0, mass: float = 1.0, c: float = 1.0, tol: float = BVP_TOL,
          guess=None, max_iter: int = MAX_NEWTON) -> ShootingResult:
    """Classical arc from x0 to x on s in [0, 1] by damped-Newton single shooting.

    The unknown is the initial velocity; the Jacobian d y(1)/d u0 comes from
    central differences.  A near-singular Jacobian signals a conjugate point
    (no locally unique arc) and raises ShootingError.
    """
    x0 = four_vector(x0)
    x = four_vector(x)
    u = four_vector(guess) if guess is not None else x - x0
    if minkowski_dot(u, u) <= 0:
        raise ShootingError(f"initial guess {u} for the arc {x0} -> {x} is not timelike")
    size = max(1.0, float(np.max(np.abs(x))), float(np.max(np.abs(x0))))
    target = tol * size

    def fly(v):
        return integrate_worldline(field, x0, v, (0.0, 1.0), tol=0.1 * tol, charge=charge, mass=mass, c=c,
                                   proper_time_scaled=True)

    def jac(v):
        h = 1e-6 * max(1.0, float(np.max(np.abs(v))))
        plus = [fly(v + h * e) for e in np.eye(4)]
        minus = [fly(v - h * e) for e in np.eye(4)]
        J = np.stack([(p.end - m.end) / (2 * h) for p, m in zip(plus, minus)], axis=-1)
        return J, (plus, minus), h

    line = fly(u)
    res = line.end - x
    it = 0
    while np.max(np.abs(res)) > target:
        if it >= max_iter:
            raise ShootingError(f"shooting to {x} did not converge in {max_iter} iterations")
        J, _, _ = jac(u)
        _check_condition(J, x)
        step = np.linalg.solve(J, -res)
        lam = 1.0
        while True:
            trial = u + lam * step
            try:
                if minkowski_dot(trial, trial) <= 0:
                    raise IntegrationError("spacelike trial velocity")
                cand = fly(trial)
                cand_res = cand.end - x
                if np.max(np.abs(cand_res)) < np.max(np.abs(res)) or lam < 1e-3:
                    break
            except IntegrationError:
                if lam < 1e-3:
                    raise ShootingError(f"shooting to {x} left the timelike region") from None
            lam *= 0.5
        u, line, res = trial, cand, cand_res
        it += 1
    J, probes, h = jac(u)
    _check_condition(J, x)
    return ShootingResult(line, u, J, probes, h, it)


def _check_condition(J, x):
    if not np.all(np.isfinite(J)) or np.linalg.cond(J) > CONDITION_LIMIT:
        raise ShootingError(f"shooting Jacobian is singular at {x}: conjugate point, arc not locally unique")


class ClassicalSegment(Segment):
    """The classical arc from the family's x0 to x, parametrised on [0, 1].

    dy/dx comes from the shooting sensitivities: with S(s) = dy(s)/du0,
    dy(s)/dx = S(s) S(1)^-1, where S is a central difference over re-solved
    trajectories.  ``jacobian="resolve"`` instead differences whole boundary
    value solves at x +- h e_mu.
    """

    analytic = True

    def __init__(self, family: "ClassicalPathFamily"):
        self.family = family

    def point(self, sig, x):
        return self.family.solve(x).worldline.position(sig)

    def dyds(self, sig, x):
        return self.family.solve(x).worldline.velocity(sig)

    def dydx(self, sig, x):
        sig = np.atleast_1d(np.asarray(sig, dtype=float))
        if self.family.jacobian == "resolve":
            return self.family.resolve_dydx(sig, x)
        shot = self.family.solve(x)
        plus, minus = shot.probes
        S = np.stack([(p.position(sig) - m.position(sig)) / (2 * shot.step) for p, m in zip(plus, minus)], axis=-1)
        return S @ np.linalg.inv(shot.jacobian)


class ClassicalPathFamily(PathFamily):
    """Path family whose member ending at x is the classical arc from x0 to x.

    Solves are cached per endpoint.  Starting guesses are taken from the
    closest cached arc, scaled along the ray from x0, which is exact for
    endpoints on an already solved arc.
    """

    def __init__(self, field, x0=None, *, charge: float = 1.0, mass: float = 1.0, c: float = 1.0,
                 tol: float = BVP_TOL, jacobian: str = "sensitivity", resolve_step: float = 1e-4,
                 name: str = "classical"):
        if jacobian not in ("sensitivity", "resolve"):
            raise ValueError(f"unknown jacobian mode {jacobian!r}")
        if charge == 0:
            raise ValueError("a classical family needs a nonzero charge")
        self.field = field
        self.charge, self.mass, self.c, self.tol = charge, mass, c, tol
        self.jacobian = jacobian
        self.resolve_step = resolve_step
        self._cache: dict = {}
        super().__init__([ClassicalSegment(self)], field.x0 if x0 is None else x0, name)

    def solve(self, x) -> ShootingResult:
        x = np.asarray(x, dtype=float)
        key = tuple(x.tolist())
        hit = self._cache.get(key)
        if hit is None:
            hit = shoot(self.field, self.x0, x, charge=self.charge, mass=self.mass, c=self.c, tol=self.tol,
                        guess=self._guess(x))
            self._cache[key] = hit
        return hit

    def _guess(self, x):
        if not self._cache:
            return None
        keys = np.array(list(self._cache.keys()))
        nearest = int(np.argmin(np.max(np.abs(keys - x), axis=1)))
        shot = list(self._cache.values())[nearest]
        # velocity of the sub-arc that ends where the cached arc passes nearest to x
        d_end = shot.worldline.end - self.x0
        d_new = x - self.x0
        ratio = float(np.dot(d_new, d_end) / np.dot(d_end, d_end)) if np.any(d_end) else 1.0
        return shot.u0 * ratio if ratio > 0 else shot.u0

    def resolve_dydx(self, sig, x):
        x = np.asarray(x, dtype=float)
        h = self.resolve_step * max(1.0, float(np.max(np.abs(x))))
        cols = []
        for e in np.eye(4):
            plus = self.solve(x + h * e).worldline.position(sig)
            minus = self.solve(x - h * e).worldline.position(sig)
            cols.append((plus - minus) / (2 * h))
        return np.stack(cols, axis=-1)

    def worldline(self, x) -> WorldLine:
        return self.solve(x).worldline


def classical_potential(field, family: ClassicalPathFamily, x, *, order: int = 16, tol: float = 1e-10) -> np.ndarray:
    """Covariant potential on the classical family from the arc's acceleration.

    Along a classical arc F_{nu lam} dy^nu/ds = (m c^2 / (e |u|)) d^2y_lam/ds^2,
    so the field never enters: the integrand is the (lowered) acceleration
    contracted with dy/dx.
    """
    x = four_vector(x)
    line = family.worldline(x)
    seg = family.segments[0]
    factor = family.mass * family.c**2 / family.charge

    def integrand(s):
        u = line.velocity(s)
        acc = lower(line.acceleration(s))
        J = seg.dydx(s, x)
        return (factor / np.sqrt(minkowski_dot(u, u)))[:, None] * np.einsum("nl,nlm->nm", acc, J)

    value, _ = adaptive_gauss_legendre(integrand, 0.0, 1.0, order=order, tol=tol)
    return value


class WorldLineSegment(Segment):
    """A fixed world line viewed as a path segment on [0, 1] (independent of x)."""

    analytic = True

    def __init__(self, line: WorldLine):
        self.line = line
        self.lo, self.hi = line.s_span

    def _s(self, sig):
        return self.lo + (self.hi - self.lo) * np.atleast_1d(np.asarray(sig, dtype=float))

    def point(self, sig, x=None):
        return self.line.position(self._s(sig))

    def dyds(self, sig, x=None):
        return (self.hi - self.lo) * self.line.velocity(self._s(sig))

    def dydx(self, sig, x=None):
        return np.zeros((np.size(sig), 4, 4))


class ActionTerms(NamedTuple):
    proper_time_action: float
    interaction_integral: float


def semiclassical_phase(terms: ActionTerms, charge: float, constants: Constants = NATURAL) -> float:
    """S / hbar with S = proper-time action - (e/c) * interaction integral."""
    action = terms.proper_time_action - charge / constants.c * terms.interaction_integral
    return action / constants.hbar


def action_and_phase(worldline: WorldLine, constants: Constants = NATURAL, potential=None, *,
                     order: int = 8, tol: float = 1e-9) -> ActionTerms:
    """Both terms of the charged-particle action along ``worldline``.

    proper_time_action = -m c^2 int dtau = -m c int sqrt(u.u) ds.
    interaction_integral = int A_mu dy^mu with ``potential`` (a vectorised
    covariant potential); by default the classical family from the line's
    start point.  Raises PathError if the line is spacelike anywhere.
    """
    seg = WorldLineSegment(worldline)
    s = np.linspace(*worldline.s_span, 257)
    norms = minkowski_dot(worldline.velocity(s), worldline.velocity(s))
    if np.any(norms <= 0):
        raise PathError("world line has a spacelike or null segment; proper time is not real")

    def dtau(sig):
        u = seg.dyds(sig)
        return np.sqrt(np.maximum(minkowski_dot(u, u), 0.0))

    length, _ = adaptive_gauss_legendre(dtau, 0.0, 1.0, tol=1e-12)
    proper = -worldline.mass * constants.c * float(length)

    if potential is None:
        family = ClassicalPathFamily(worldline.field, worldline.start, charge=worldline.charge,
                                     mass=worldline.mass, c=worldline.c)
        potential = potential_function(worldline.field, family, order=order)
    interaction, _ = line_integral(potential, [seg], worldline.end, order=order, tol=tol)
    return ActionTerms(proper, float(interaction))
