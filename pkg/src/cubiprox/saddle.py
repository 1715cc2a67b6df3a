"""Projection onto the saddle ``S = {(x, y, g) : <x, y> = alpha g}``.

The norm is ``||x||^2 + ||y||^2 + beta^2 g^2``. Two families of points have a
closed-form projection:

* anti-diagonal points ``(z, -z, g)`` with ``alpha (g - alpha/beta^2) < -||z||^2/4``,
  which map to ``(z/(1-x), -z/(1-x), g + alpha x/beta^2)``;
* diagonal points ``(z, z, g)`` with ``alpha (g + alpha/beta^2) > ||z||^2/4``,
  which map to ``(z/(1+x), z/(1+x), g + alpha x/beta^2)``.

In both cases ``x`` is the unique root in ``(-1, 1)`` of a cubic. Its depressed
form always has ``p <= 0``, and the root is picked by a single trigonometric
expression whose phase depends on a sign ``s``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._closed import bisect_root, cardano, clamp_unit, polish, trig_angle
from .errors import ConsistencyError, DomainError, PreconditionError

ANTIDIAG = "antidiag"
DIAG = "diag"
_EDGE = 1e-12


@dataclass(frozen=True)
class SaddleSet:
    alpha: float
    beta: float
    n: int | None = None

    def __post_init__(self) -> None:
        alpha, beta = float(self.alpha), float(self.beta)
        if not (math.isfinite(alpha) and alpha != 0.0):
            raise DomainError(f"alpha must be finite and nonzero, got {self.alpha!r}")
        if not (math.isfinite(beta) and beta > 0.0):
            raise DomainError(f"beta must be finite and positive, got {self.beta!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def membership_residual(self, x, y, g: float) -> float:
        return float(np.dot(x, y)) - self.alpha * g

    def distance(self, u: tuple, v: tuple) -> float:
        """Weighted distance between two triples ``(x, y, g)``."""
        dx = np.asarray(u[0], float) - np.asarray(v[0], float)
        dy = np.asarray(u[1], float) - np.asarray(v[1], float)
        dg = u[2] - v[2]
        return math.sqrt(float(dx @ dx + dy @ dy) + (self.beta * dg) ** 2)


@dataclass(frozen=True)
class SaddleCase:
    kind: str
    z: np.ndarray
    gamma: float

    def __post_init__(self) -> None:
        if self.kind not in (ANTIDIAG, DIAG):
            raise DomainError(f"kind must be {ANTIDIAG!r} or {DIAG!r}, got {self.kind!r}")
        z = np.array(self.z, dtype=np.float64, ndmin=1)
        if z.ndim != 1 or not np.all(np.isfinite(z)) or not math.isfinite(self.gamma):
            raise DomainError("z must be a finite vector and gamma finite")
        if not np.any(z):
            raise DomainError("z must be nonzero")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def zeta(self) -> float:
        return float(np.linalg.norm(self.z))

    def point(self) -> tuple[np.ndarray, np.ndarray, float]:
        sign = -1.0 if self.kind == ANTIDIAG else 1.0
        return self.z.copy(), sign * self.z, self.gamma

    def precondition_gap(self, S: SaddleSet) -> float:
        """Positive exactly when the closed form applies."""
        a, b2, g, zz = S.alpha, S.beta ** 2, self.gamma, self.zeta ** 2
        if self.kind == ANTIDIAG:
            return -zz / 4.0 - a * (g - a / b2)
        return a * (g + a / b2) - zz / 4.0

    def check(self, S: SaddleSet) -> None:
        a, b2, g, zz = S.alpha, S.beta ** 2, self.gamma, self.zeta ** 2
        if self.precondition_gap(S) > 0.0:
            return
        if self.kind == ANTIDIAG:
            raise PreconditionError(
                f"anti-diagonal case needs alpha*(gamma - alpha/beta^2) < -||z||^2/4, "
                f"got {a * (g - a / b2)!r} >= {-zz / 4.0!r}")
        raise PreconditionError(
            f"diagonal case needs alpha*(gamma + alpha/beta^2) > ||z||^2/4, "
            f"got {a * (g + a / b2)!r} <= {zz / 4.0!r}")


@dataclass(frozen=True, eq=False)
class SaddleProjection:
    """The projected triple plus the root ``x`` and how it was found.

    Unpacks as ``P1, P2, P3``.
    """

    p1: np.ndarray
    p2: np.ndarray
    p3: float
    root: float
    branch: str
    delta: float
    fallback: bool = False

    def __iter__(self) -> Iterator:
        return iter((self.p1, self.p2, self.p3))


def cubic_pq(case: SaddleCase, S: SaddleSet) -> tuple[float, float, float, float]:
    """``(x0, p, q, delta)`` of the depressed root equation."""
    a, b2, g, zz = S.alpha, S.beta ** 2, case.gamma, case.zeta ** 2
    w = b2 * zz / (a * a)
    if case.kind == ANTIDIAG:
        s = a + b2 * g
        x0 = (2.0 * a - b2 * g) / (3.0 * a)
        q = 2.0 * s ** 3 / (27.0 * a ** 3) + w
        delta = w * (w / 4.0 + s ** 3 / (27.0 * a ** 3))
    else:
        s = b2 * g - a
        x0 = -(2.0 * a + b2 * g) / (3.0 * a)
        q = 2.0 * s ** 3 / (27.0 * a ** 3) - w
        delta = w * (w / 4.0 - s ** 3 / (27.0 * a ** 3))
    p = -s * s / (3.0 * a * a)
    return x0, p, q, delta


def scalar_equation(case: SaddleCase, S: SaddleSet, x: float) -> float:
    """Increasing (anti-diagonal) or decreasing (diagonal) on ``(-1, 1)``."""
    a, b2, g, zz = S.alpha, S.beta ** 2, case.gamma, case.zeta ** 2
    if case.kind == ANTIDIAG:
        return 2.0 * zz / (1.0 - x) ** 2 + 2.0 * a * a * x / b2 + 2.0 * a * g
    return 2.0 * zz / (1.0 + x) ** 2 - 2.0 * a * a * x / b2 - 2.0 * a * g


def _scalar_derivative(case: SaddleCase, S: SaddleSet, x: float) -> float:
    a, b2, zz = S.alpha, S.beta ** 2, case.zeta ** 2
    if case.kind == ANTIDIAG:
        return 4.0 * zz / (1.0 - x) ** 3 + 2.0 * a * a / b2
    return -4.0 * zz / (1.0 + x) ** 3 - 2.0 * a * a / b2


def merged_trig_root(case: SaddleCase, S: SaddleSet) -> float:
    """The ``delta < 0`` root via the sign-dependent phase."""
    a, b2, g = S.alpha, S.beta ** 2, case.gamma
    x0, p, q, _ = cubic_pq(case, S)
    theta = trig_angle(p, q)
    if case.kind == ANTIDIAG:
        sgn = math.copysign(1.0, a * a + a * b2 * g)
        amp = 2.0 * (a + b2 * g) / (3.0 * a)
        phase = (3.0 + sgn) * math.pi
    else:
        sgn = math.copysign(1.0, a * a - a * b2 * g)
        amp = 2.0 * (a - b2 * g) / (3.0 * a)
        phase = (2.0 + 2.0 * sgn) * math.pi
    return x0 + sgn * amp * math.cos((phase + theta) / 3.0)


def root(case: SaddleCase, S: SaddleSet) -> tuple[float, str, float, bool]:
    """``(x, branch, delta, fallback)`` for a case whose precondition holds."""
    x0, p, q, delta = cubic_pq(case, S)
    if p > 0.0:
        raise ConsistencyError(f"depressed coefficient p = {p!r} must be <= 0")
    if delta >= 0.0:
        branch = "cardano"
        x = x0 + cardano(p, q, delta)
    else:
        branch = "trig"
        x = merged_trig_root(case, S)
    x = polish(lambda s: scalar_equation(case, S, s),
               lambda s: _scalar_derivative(case, S, s), x)
    fallback = not (math.isfinite(x) and -1.0 < x < 1.0)
    if fallback:
        x = bisect_root(lambda s: scalar_equation(case, S, s), -1.0 + _EDGE, 1.0 - _EDGE)
        if not -1.0 < x < 1.0:
            raise ConsistencyError(f"no root of the scalar equation in (-1, 1), got {x!r}")
    return x, branch, delta, fallback


def project(S: SaddleSet, case: SaddleCase) -> SaddleProjection:
    case.check(S)
    x, branch, delta, fallback = root(case, S)
    g = case.gamma + S.alpha * x / S.beta ** 2
    if case.kind == ANTIDIAG:
        v = case.z / (1.0 - x)
        return SaddleProjection(v, -v, g, x, branch, delta, fallback)
    v = case.z / (1.0 + x)
    return SaddleProjection(v, v.copy(), g, x, branch, delta, fallback)


def project_antidiag(S: SaddleSet, z, gamma: float) -> SaddleProjection:
    """Project ``(z, -z, gamma)`` onto ``S``."""
    return project(S, SaddleCase(ANTIDIAG, z, gamma))


def project_diag(S: SaddleSet, z, gamma: float) -> SaddleProjection:
    """Project ``(z, z, gamma)`` onto ``S``."""
    return project(S, SaddleCase(DIAG, z, gamma))
