"""Proximal map and conjugate of ``h(x) = alpha / x`` on ``x > 0``.

The prox is the unique positive root of ``x^3 - y x^2 - alpha``. With
``t = y/3`` its depressed discriminant is ``alpha (alpha/4 + t^3)``, which
changes sign at the fold ``y0 = -3 cbrt(alpha/4)``: above the fold the radical
formula applies, below it the trigonometric one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._closed import bisect_root, cbrt, clamp_unit, polish
from .errors import DomainError

FOLD_RTOL = 1e-12
LARGE_Y = 1e8


@dataclass(frozen=True)
class ReciprocalFn:
    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (math.isfinite(alpha) and alpha > 0.0):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def breakpoint(self) -> float:
        """``y0 = -3 cbrt(alpha/4)``, where the prox switches formula."""
        return -3.0 * cbrt(self.alpha / 4.0)

    def __call__(self, x: float) -> float:
        return self.alpha / x if x > 0.0 else math.inf

    def discriminant(self, y: float) -> float:
        t = y / 3.0
        return self.alpha * (self.alpha / 4.0 + t * t * t)

    def stationarity(self, x: float, y: float) -> float:
        return x * x * (x - y) - self.alpha

    def residual_bound(self, y: float, tol: float = 1e-9) -> float:
        return tol * max(1.0, abs(y) ** 3, self.alpha)


@dataclass(frozen=True)
class ReciprocalProx:
    x: float
    branch: str
    """``cardano``, ``fold``, ``trig`` or ``asymptotic``."""
    delta: float
    fallback: bool = False


def _closed_form(f: ReciprocalFn, y: float) -> tuple[float, str]:
    a = f.alpha
    y0 = f.breakpoint
    if y > LARGE_Y:
        x = y
        for _ in range(2):
            x = y + a / (x * x)
        return x, "asymptotic"
    if y < -LARGE_Y:
        x = math.sqrt(a / -y)
        for _ in range(2):
            x = math.sqrt(a / (x - y))
        return x, "asymptotic"
    if abs(y - y0) <= FOLD_RTOL * max(1.0, abs(y0)):
        return cbrt(a) / cbrt(4.0), "fold"
    t = y / 3.0
    t3 = t * t * t
    if y > y0:
        h = 0.5 * a + t3
        u = cbrt(h + math.sqrt(max(f.discriminant(y), 0.0)))
        # cbrt(h - sqrt(delta)) = t^2 / u, since the product of the two terms is t^2
        return t + u + t * t / u, "cardano"
    return trig_stable(a, y), "trig"


def trig_as_printed(alpha: float, y: float) -> float:
    """``(y/3)(1 - 2 cos(arccos(((y/3)^3 + alpha/2) / -(y/3)^3) / 3))`` for ``y < y0``.

    Loses all digits as ``y -> -inf`` because ``2 cos(.)`` tends to 1.
    """
    t = y / 3.0
    t3 = t * t * t
    arg = clamp_unit((t3 + 0.5 * alpha) / -t3)
    return t * (1.0 - 2.0 * math.cos(math.acos(arg) / 3.0))


def trig_stable(alpha: float, y: float) -> float:
    """Same root as :func:`trig_as_printed`, free of cancellation.

    With ``arccos(...) = pi - psi`` and ``sin(psi/2) = sqrt(alpha / (4 |y/3|^3))``,
    ``1 - 2 cos((pi - psi)/3) = 2 sin^2(psi/6) - sqrt(3) sin(psi/3)``.
    """
    t = y / 3.0
    psi = 2.0 * math.asin(min(1.0, math.sqrt(alpha / (4.0 * abs(t) ** 3))))
    return t * (2.0 * math.sin(psi / 6.0) ** 2 - math.sqrt(3.0) * math.sin(psi / 3.0))


def prox_reciprocal_detail(f: ReciprocalFn, y: float) -> ReciprocalProx:
    """Prox of ``alpha/x`` at ``y`` with the branch taken.

    The closed form is polished by Newton on the stationarity cubic and then
    checked for positivity and for a residual small against the magnitude of
    its terms; a failed check falls back to bisection on
    ``[max(0, y), |y| + alpha + 1]``.
    """
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"y must be finite, got {y!r}")
    x, branch = _closed_form(f, y)
    x = polish(lambda s: f.stationarity(s, y),
               lambda s: s * (3.0 * s - 2.0 * y), x)
    ok = (math.isfinite(x) and x > 0.0
          and abs(f.stationarity(x, y)) <= 1e-9 * max(f.alpha, x * x * (x + abs(y))))
    if not ok:
        x = bisect_root(lambda s: f.stationarity(s, y), max(0.0, y), abs(y) + f.alpha + 1.0)
    return ReciprocalProx(x, branch, f.discriminant(y), not ok)


def prox_reciprocal(f: ReciprocalFn, y: float) -> float:
    """Minimiser of ``alpha/x + (x - y)^2 / 2`` over ``x > 0``."""
    return prox_reciprocal_detail(f, y).x


def conjugate_reciprocal(f: ReciprocalFn, y: float) -> float:
    """``-2 sqrt(-alpha y)`` for ``y <= 0`` and ``+inf`` otherwise."""
    if y > 0.0:
        return math.inf
    return -2.0 * math.sqrt(-f.alpha * y)


def fn_value(f: ReciprocalFn, x: float) -> float:
    return f(x)
