"""Conjugates and proximal maps of convex quartics.

For ``h(x) = alpha x^4 + beta x^3 + gamma x^2 + delta x + epsilon`` both the
conjugate argmax (``h'(x) = y``) and the prox (``h'(x) + x = y``) are roots of
a cubic whose depressed form has ``p >= 0`` whenever ``h`` is convex, so each
has exactly one real root.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from ._closed import cbrt
from .cubic import Cubic, solve_general
from .errors import ConsistencyError, DomainError


def is_convex(alpha: float, beta: float, gamma: float,
              delta: float = 0.0, epsilon: float = 0.0) -> bool:
    """``alpha > 0`` and ``8 alpha gamma >= 3 beta^2``; the linear and constant
    terms never matter but are accepted so a full coefficient tuple can be passed."""
    if not alpha > 0.0:
        return False
    if beta == 0.0:
        return gamma >= 0.0
    if not gamma > 0.0:
        return False
    lhs, rhs = 8.0 * alpha * gamma, 3.0 * beta * beta
    if _normal(lhs) and _normal(rhs):
        return lhs >= rhs
    # a product left the normal range: compare logarithms instead
    return math.log(8.0 * alpha) + math.log(gamma) >= math.log(3.0) + 2.0 * math.log(abs(beta))


def _normal(v: float) -> bool:
    return sys.float_info.min <= v < math.inf


@dataclass(frozen=True)
class ConvexQuartic:
    alpha: float
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "delta", "epsilon"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if not is_convex(self.alpha, self.beta, self.gamma):
            raise DomainError(
                "quartic is not convex: need alpha > 0 and 8*alpha*gamma >= 3*beta^2, "
                f"got alpha={self.alpha!r}, 8*alpha*gamma={8 * self.alpha * self.gamma!r}, "
                f"3*beta^2={3 * self.beta ** 2!r}"
            )

    @property
    def coefficients(self) -> tuple[float, float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta, self.epsilon)

    def __call__(self, x: float) -> float:
        return (((self.alpha * x + self.beta) * x + self.gamma) * x + self.delta) * x + self.epsilon

    def derivative(self, x: float) -> float:
        return ((4.0 * self.alpha * x + 3.0 * self.beta) * x + 2.0 * self.gamma) * x + self.delta

    def conjugate_cubic(self, y: float) -> Cubic:
        """``h'(x) - y``."""
        return Cubic(4.0 * self.alpha, 3.0 * self.beta, 2.0 * self.gamma, self.delta - y)

    def prox_cubic(self, y: float) -> Cubic:
        """``h'(x) + x - y``."""
        return Cubic(4.0 * self.alpha, 3.0 * self.beta, 2.0 * self.gamma + 1.0, self.delta - y)


@dataclass(frozen=True)
class ConjugateValue:
    """``h*(y)`` together with the point where the supremum is attained."""

    argmax: float
    value: float


def _unique_root(f: Cubic) -> float:
    roots = solve_general(f)
    if roots.real_count != 1:
        raise ConsistencyError(
            f"expected a unique real root of {f.coefficients}, got {roots.roots}"
        )
    return roots.roots[0]


def conjugate(h: ConvexQuartic, y: float) -> ConjugateValue:
    """Fenchel conjugate ``sup_x (x y - h(x))`` and its maximiser."""
    x = _unique_root(h.conjugate_cubic(y))
    return ConjugateValue(x, y * x - h(x))


def prox(h: ConvexQuartic, y: float) -> float:
    """Minimiser of ``h(x) + (x - y)^2 / 2``."""
    return _unique_root(h.prox_cubic(y))


def prox_pq(h: ConvexQuartic, y: float) -> tuple[float, float]:
    """Depressed coefficients of the prox cubic, written out directly.

    Used as an independent check on the generic reduction.
    """
    a, b, g, d = h.alpha, h.beta, h.gamma, h.delta
    p = (4.0 * a * (1.0 + 2.0 * g) - 3.0 * b * b) / (16.0 * a * a)
    q = (8.0 * a * a * (d - y) + b ** 3 - 2.0 * a * b * (1.0 + 2.0 * g)) / (32.0 * a ** 3)
    return p, q


def conjugate_pq(h: ConvexQuartic, y: float) -> tuple[float, float]:
    """Depressed coefficients of the conjugate stationarity cubic."""
    a, b, g, d = h.alpha, h.beta, h.gamma, h.delta
    p = (8.0 * a * g - 3.0 * b * b) / (16.0 * a * a)
    q = (8.0 * a * a * (d - y) + b ** 3 - 4.0 * a * b * g) / (32.0 * a ** 3)
    return p, q


GEOMETRIC = ConvexQuartic(1.0, 1.0, 1.0, 1.0, 1.0)
"""``x^4 + x^3 + x^2 + x + 1``."""


def prox_geometric(y: float) -> float:
    """Closed-form prox of ``x^4 + x^3 + x^2 + x + 1``.

    ``-1/4 + (cbrt(w + s) + cbrt(w - s)) / 2`` with ``w = y - 3/8`` and
    ``s = sqrt(w^2 + (3/4)^3)``. The two cube roots multiply to ``-3/4``, so
    the smaller one is recovered from the larger to avoid cancellation.
    """
    w = y - 0.375
    s = math.hypot(w, 0.75 ** 1.5)
    big = cbrt(w + math.copysign(s, w))
    return -0.25 + 0.5 * (big - 0.75 / big)


def conjugate_argmax_geometric(y: float) -> float:
    """Closed-form maximiser for the conjugate of ``x^4 + x^3 + x^2 + x + 1``.

    ``-1/4 + cbrt(w + s) + cbrt(w - s)`` with ``w = (y - 5/8)/8`` and
    ``s = sqrt(w^2 + (5/48)^3)``; the cube roots multiply to ``-5/48``.
    """
    w = (y - 0.625) / 8.0
    s = math.hypot(w, (5.0 / 48.0) ** 1.5)
    big = cbrt(w + math.copysign(s, w))
    return -0.25 + big - (5.0 / 48.0) / big


def prox_pure_quartic(alpha: float, y: float) -> float:
    """Closed-form prox of ``alpha x^4``.

    ``(cbrt(y/alpha + s) + cbrt(y/alpha - s)) / 2`` with
    ``s = sqrt((1 + 27 alpha y^2) / (27 alpha^3))``; the cube roots multiply to
    ``-1/(3 alpha)``. Odd in ``y``.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    w = y / alpha
    s = math.sqrt((1.0 + 27.0 * alpha * y * y) / (27.0 * alpha ** 3))
    big = cbrt(w + math.copysign(s, w))
    return 0.5 * (big - 1.0 / (3.0 * alpha * big))


def conjugate_pure_quartic(alpha: float, y: float) -> float:
    """``(alpha x^4)*(y) = 3 |y|^(4/3) / (4 (4 alpha)^(1/3))``."""
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return 3.0 * abs(y) ** (4.0 / 3.0) / (4.0 * cbrt(4.0 * alpha))
