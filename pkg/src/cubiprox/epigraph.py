"""Projection onto the epigraph of ``alpha ||y||^2``.

An exterior point ``(y, eta)`` moves to ``(y/(1 + 2 alpha x), eta + x)``
where ``x`` is the unique positive root of

    4 alpha^2 x^3 + 4 alpha (alpha eta + 1) x^2 + (4 alpha eta + 1) x + eta - alpha nu^2

with ``nu = ||y||``. The depressed discriminant factors as
``nu^2 (27 alpha^2 nu^2 - 2 (2 alpha eta - 1)^3) / (1728 alpha^4)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._closed import bisect_root, cardano, polish, trig_angle
from .errors import DomainError
from .points import LabeledPoint

INTERIOR = "interior"
CARDANO = "cardano"
TRIG = "trig"


@dataclass(frozen=True)
class EpiProjection:
    point: LabeledPoint
    shift: float
    branch: str
    delta: float = 0.0
    fallback: bool = False


def depressed_pq(alpha: float, nu: float, eta: float) -> tuple[float, float]:
    k = 2.0 * alpha * eta - 1.0
    p = -k * k / (12.0 * alpha * alpha)
    q = (k ** 3 - 27.0 * alpha * alpha * nu * nu) / (108.0 * alpha ** 3)
    return p, q


def discriminant(alpha: float, nu: float, eta: float) -> float:
    """Product form of ``(p/3)^3 + (q/2)^2``; its sign is exact up to one rounding."""
    k = 2.0 * alpha * eta - 1.0
    return nu * nu * (27.0 * alpha * alpha * nu * nu - 2.0 * k ** 3) / (1728.0 * alpha ** 4)


def boundary_gap(alpha: float, nu: float, eta: float) -> float:
    """``27 alpha^2 nu^2 - 2 (2 alpha eta - 1)^3``: zero on the branch frontier."""
    return 27.0 * alpha * alpha * nu * nu - 2.0 * (2.0 * alpha * eta - 1.0) ** 3


def shift_equation(alpha: float, nu: float, eta: float, x: float) -> float:
    """Decreasing in ``x > -1/(2 alpha)``; vanishes at the shift."""
    return alpha * nu * nu / (1.0 + 2.0 * alpha * x) ** 2 - x - eta


def _check(alpha: float) -> float:
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be positive and finite, got {alpha!r}")
    return alpha


def project_epigraph(alpha: float, p: LabeledPoint) -> EpiProjection:
    """Euclidean projection of ``p`` onto ``{(y, eta) : alpha ||y||^2 <= eta}``."""
    alpha = _check(alpha)
    if not isinstance(p, LabeledPoint):
        p = LabeledPoint(*p)
    y, eta = p.vec, p.scalar
    nu = float(np.linalg.norm(y))
    if alpha * nu * nu <= eta:
        return EpiProjection(p, 0.0, INTERIOR)
    if nu == 0.0:
        # the cubic is -(x + eta)(1 + 2 alpha x)^2; its positive root is -eta
        return EpiProjection(LabeledPoint(np.zeros_like(y), 0.0), -eta, CARDANO)

    pp, qq = depressed_pq(alpha, nu, eta)
    delta = discriminant(alpha, nu, eta)
    x0 = -(alpha * eta + 1.0) / (3.0 * alpha)
    if delta >= 0.0:
        branch = CARDANO
        x = x0 + cardano(pp, qq, delta)
    else:
        branch = TRIG
        k = abs(2.0 * alpha * eta - 1.0)
        x = x0 + k / (3.0 * alpha) * math.cos(trig_angle(pp, qq) / 3.0)

    phi = lambda s: shift_equation(alpha, nu, eta, s)  # noqa: E731
    dphi = lambda s: -4.0 * alpha * alpha * nu * nu / (1.0 + 2.0 * alpha * s) ** 3 - 1.0  # noqa: E731
    x = polish(phi, dphi, x)
    fallback = not (math.isfinite(x) and x > 0.0)
    if fallback:
        x = bisect_root(phi, 0.0, alpha * nu * nu - eta)
    point = LabeledPoint(y / (1.0 + 2.0 * alpha * x), eta + x)
    return EpiProjection(point, x, branch, delta, fallback)


def in_epigraph(alpha: float, p: LabeledPoint, tol: float = 0.0) -> bool:
    return alpha * float(p.vec @ p.vec) <= p.scalar + tol
