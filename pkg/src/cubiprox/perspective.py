"""Proximal map of the closed perspective ``h(y, eta) = ||y||^2 / (2 eta)``.

Outside the region ``||y||^2 + 2 gamma eta <= 0`` (which maps to the origin)
the prox is ``((1 - gamma l/||y||) y, eta + gamma l^2 / 2)`` where ``l`` is the
positive root of the depressed cubic ``l^3 + 2(eta + gamma)/gamma l - 2||y||/gamma``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._closed import bisect_root, cardano, polish, trig_root
from .errors import DomainError
from .points import LabeledPoint

ZERO = "zero"
POSITIVE = "positive"


@dataclass(frozen=True)
class PerspectiveProxResult:
    point: LabeledPoint
    lam: float
    branch: str
    method: str
    """``origin``, ``analytic``, ``cardano`` or ``trig``."""
    delta: float = 0.0
    shrink: float = 1.0
    fallback: bool = False


def perspective_value(y, eta: float) -> float:
    """The closed perspective: ``||y||^2/(2 eta)`` for ``eta > 0``, 0 at the origin, else inf."""
    yy = float(np.dot(y, y))
    if eta > 0.0:
        return yy / (2.0 * eta)
    if eta == 0.0 and yy == 0.0:
        return 0.0
    return math.inf


def lambda_cubic(gamma: float, ny: float, eta: float) -> tuple[float, float]:
    """``(p, q)`` of the depressed cubic for ``lambda``."""
    return 2.0 * (eta + gamma) / gamma, -2.0 * ny / gamma


def prox_perspective(gamma: float, p: LabeledPoint) -> PerspectiveProxResult:
    """Prox of ``gamma h`` at ``p = (y, eta)``."""
    gamma = float(gamma)
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise DomainError(f"gamma must be positive and finite, got {gamma!r}")
    if not isinstance(p, LabeledPoint):
        p = LabeledPoint(*p)
    y, eta = p.vec, p.scalar
    ny = float(np.linalg.norm(y))
    if ny * ny + 2.0 * gamma * eta <= 0.0:
        return PerspectiveProxResult(LabeledPoint(np.zeros_like(y), 0.0), 0.0, ZERO, "origin")
    if ny == 0.0:
        return PerspectiveProxResult(LabeledPoint(np.zeros_like(y), eta), 0.0, POSITIVE, "analytic")

    pp, qq = lambda_cubic(gamma, ny, eta)
    delta = (pp / 3.0) ** 3 + (ny / gamma) ** 2
    if delta >= 0.0:
        method = "cardano"
        lam = cardano(pp, qq, delta)
    else:
        method = "trig"
        lam = trig_root(pp, qq, 0)
    lam = polish(lambda t: (t * t + pp) * t + qq, lambda t: 3.0 * t * t + pp, lam)
    fallback = not (math.isfinite(lam) and lam >= 0.0)
    if fallback:
        hi = (2.0 * ny / gamma) ** (1.0 / 3.0) + math.sqrt(max(0.0, -pp)) + 1.0
        lam = bisect_root(lambda t: (t * t + pp) * t + qq, 0.0, hi)
    if eta >= 0.0:
        # ny = gamma (l^3 + p l)/2 turns 1 - gamma l/ny into a sum of nonnegative terms
        shrink = (lam * lam + 2.0 * eta / gamma) / (lam * lam + pp)
    else:
        shrink = 1.0 - gamma * lam / ny
    point = LabeledPoint(shrink * y, eta + 0.5 * gamma * lam * lam)
    return PerspectiveProxResult(point, lam, POSITIVE, method, delta, shrink, fallback)
