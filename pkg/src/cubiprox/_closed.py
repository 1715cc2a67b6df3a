"""Scalar closed-form pieces shared by the operator modules."""
from __future__ import annotations

import math
from typing import Callable

from ._backend import kernels

cbrt = kernels.cbrt


def clamp_unit(t: float) -> float:
    return min(1.0, max(-1.0, t))


def cardano(p: float, q: float, delta: float) -> float:
    """Real root ``u + v`` of ``z^3 + p z + q`` for ``delta >= 0``.

    The larger cube-root term is taken with the sign that avoids cancellation,
    the other follows from ``u v = -p/3``, and the sum is formed as
    ``-q / (u^2 - u v + v^2)``.
    """
    s = math.sqrt(delta) if delta > 0.0 else 0.0
    h = -0.5 * q
    u = cbrt(h + math.copysign(s, h))
    if u == 0.0:
        return 0.0
    v = -p / (3.0 * u)
    den = u * u - u * v + v * v
    return -q / den if den != 0.0 else u + v


def trig_angle(p: float, q: float) -> float:
    """``arccos((-q/2) / (-p/3)^(3/2))`` with the argument clamped; needs ``p < 0``."""
    m = math.sqrt(-p / 3.0)
    return math.acos(clamp_unit(-0.5 * q / (m * m * m)))


def trig_root(p: float, q: float, k: int) -> float:
    """``2 (-p/3)^(1/2) cos((theta + 2 k pi)/3)``: k=0 largest, k=1 smallest, k=2 middle."""
    theta = trig_angle(p, q)
    return 2.0 * math.sqrt(-p / 3.0) * math.cos((theta + 2.0 * k * math.pi) / 3.0)


def polish(func: Callable[[float], float], dfunc: Callable[[float], float],
           x: float, steps: int = 3) -> float:
    """At most ``steps`` Newton steps, each kept only if it shrinks ``|func|``."""
    fx = func(x)
    for _ in range(steps):
        if fx == 0.0:
            break
        dfx = dfunc(x)
        if dfx == 0.0 or not math.isfinite(dfx):
            break
        xn = x - fx / dfx
        fn = func(xn)
        if not abs(fn) < abs(fx):
            break
        x, fx = xn, fn
    return x


def bisect_root(func: Callable[[float], float], lo: float, hi: float,
                max_iter: int = 200) -> float:
    """Plain bisection on a sign-change bracket; fallback for the closed forms."""
    flo = func(lo)
    if flo == 0.0:
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = func(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
