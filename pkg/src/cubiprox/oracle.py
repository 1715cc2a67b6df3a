"""Brute-force reference computations.

Nothing here touches the radical or trigonometric root formulas: roots are
isolated from the monotone pieces of the cubic and refined by bisection, and
minimisers are found by golden-section search. Tests and ``cubiprox check``
compare the closed forms against these.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cubic import Cubic, monotone_intervals, residual_scale

DEFAULT_SEED = 0x5EED
SEED_ENV = "CUBIPROX_SEED"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def default_seed() -> int:
    """Seed for randomised suites: ``$CUBIPROX_SEED`` if set, else 0x5EED."""
    raw = os.environ.get(SEED_ENV)
    return int(raw, 0) if raw else DEFAULT_SEED


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(default_seed() if seed is None else seed)


@dataclass(frozen=True)
class Bracket:
    """``[lo, hi]`` with a sign change of ``f`` (or of ``f'`` when
    ``derivative`` is set, which marks a double root)."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float
    derivative: bool = False

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise ValueError("bracket endpoints have the same sign")


def cauchy_bound(f: Cubic) -> float:
    """Every root of ``f`` lies strictly inside ``(-R, R)``."""
    return 1.0 + max(abs(f.b), abs(f.c), abs(f.d)) / abs(f.a)


def isolate_roots(f: Cubic, zero_tol: float = 1e-13) -> list[Bracket]:
    """One bracket per distinct real root of ``f``.

    Simple roots come from sign changes across the monotone pieces, clipped
    to the Cauchy bound. A critical point where ``|f|`` is below
    ``zero_tol`` times the residual scale counts as a double root; its
    bracket straddles the sign change of ``f'`` instead.
    """
    R = cauchy_bound(f)

    def fprime(x: float) -> float:
        return (3.0 * f.a * x + 2.0 * f.b) * x + f.c

    def sign(x: float) -> int:
        v = f(x)
        if abs(v) <= zero_tol * residual_scale(f, x):
            return 0
        return 1 if v > 0 else -1

    out: list[Bracket] = []
    pieces = monotone_intervals(f)
    for piece in pieces:
        lo = max(piece.lo, -R)
        hi = min(piece.hi, R)
        if sign(lo) * sign(hi) < 0:
            out.append(Bracket(lo, hi, f(lo), f(hi)))
    for piece in pieces[:-1]:
        xc = piece.hi
        if sign(xc) == 0:
            h = 1e-6 * max(1.0, abs(xc))
            out.append(Bracket(xc - h, xc + h, fprime(xc - h), fprime(xc + h), True))
    if len(pieces) == 1:
        # b^2 <= 3ac: f is monotone, a triple root shows up as f(x0) == 0
        x0 = f.inflection()
        if not out and sign(x0) == 0:
            h = 1e-6 * max(1.0, abs(x0))
            out.append(Bracket(x0 - h, x0 + h, f(x0 - h), f(x0 + h)))
    out.sort(key=lambda br: br.lo)
    return out


def bisect(br: Bracket, func: Callable[[float], float], tol: float = 1e-14,
           max_iter: int = 200) -> float:
    """Refine a sign-change bracket of ``func`` down to width ``tol``."""
    lo, hi, flo = br.lo, br.hi, br.f_lo
    if flo * br.f_hi > 0:
        raise ValueError("invalid bracket")
    if flo == 0.0:
        return lo
    if br.f_hi == 0.0:
        return hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid <= lo or mid >= hi:
            break
        fm = func(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_interval(func: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-14) -> float:
    """Bisection on ``[lo, hi]`` given only the function."""
    return bisect(Bracket(lo, hi, func(lo), func(hi)), func, tol)


def real_roots(f: Cubic) -> list[tuple[float, int]]:
    """``(root, multiplicity)`` pairs from bracketing and bisection alone."""
    out = []
    for br in isolate_roots(f):
        if br.derivative:
            fp = lambda x: (3.0 * f.a * x + 2.0 * f.b) * x + f.c  # noqa: E731
            out.append((bisect(br, fp), 2))
        else:
            out.append((bisect(br, f), 1))
    return out


def golden_min(func: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-12, max_iter: int = 400) -> tuple[float, float]:
    """Golden-section search for the minimiser of a unimodal ``func``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = func(d)
    x = 0.5 * (a + b)
    fx = func(x)
    for cand, fcand in ((c, fc), (d, fd)):
        if fcand < fx:
            x, fx = cand, fcand
    return x, fx


def grid_golden_min(func: Callable[[float], float], lo: float, hi: float,
                    n: int = 200, tol: float = 1e-12) -> tuple[float, float]:
    """Scan a uniform grid, then golden-section search around the best node.

    Guards against objectives that are only unimodal near the minimiser.
    """
    xs = np.linspace(lo, hi, n + 1)
    vals = [func(float(x)) for x in xs]
    i = int(np.argmin(vals))
    return golden_min(func, float(xs[max(i - 1, 0)]), float(xs[min(i + 1, n)]), tol)


def convex_min(func: Callable[[float], float], x0: float, step: float = 1.0,
               tol: float = 1e-12) -> tuple[float, float]:
    """Minimise a convex ``func`` on the real line.

    Expands ``[x0 - step, x0 + step]`` by doubling until both ends rise above
    the best interior value, then runs golden-section search.
    """
    lo, hi = x0 - step, x0 + step
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        grow_lo = func(lo) <= fm
        grow_hi = func(hi) <= fm
        if not (grow_lo or grow_hi):
            break
        width = hi - lo
        if grow_lo:
            lo -= width
        if grow_hi:
            hi += width
    return golden_min(func, lo, hi, tol * max(1.0, abs(lo), abs(hi)))


def _taylor(coeffs: tuple, c: float) -> list[float]:
    """Coefficients of ``d -> poly(c + d) - poly(c)``, lowest degree first (no constant).

    ``coeffs`` is highest degree first. Synthetic division, no root formulas.
    """
    work = [float(v) for v in coeffs]
    n = len(work) - 1
    out = []
    for k in range(n + 1):
        acc = 0.0
        for i in range(n + 1 - k):
            acc = acc * c + work[i]
            work[i] = acc
        out.append(work[n - k])
    return out[1:]


def _recentred_min(coeffs: tuple, c: float, width: float) -> float:
    """Golden-section refinement of a polynomial's minimiser near ``c``.

    Searching ``poly(c + d) - poly(c)`` keeps the evaluated values small, so
    the search resolves ``d`` well below the square-root-of-epsilon limit
    that an absolute objective imposes.
    """
    t = _taylor(coeffs, c)

    def g(d: float) -> float:
        acc = 0.0
        for coef in reversed(t):
            acc = (acc + coef) * d
        return acc

    d, _ = golden_min(g, -width, width, 1e-17 * max(1.0, abs(c)))
    return c + d


def quartic_prox(h, y: float) -> float:
    """Minimiser of ``h(x) + (x - y)^2/2`` by direct search."""
    c = convex_min(lambda x: h(x) + 0.5 * (x - y) ** 2, y)[0]
    a, b, g, d, _ = h.coefficients
    coeffs = (a, b, g + 0.5, d - y, 0.0)
    return _recentred_min(coeffs, c, 1e-4 * max(1.0, abs(c)))


def quartic_conjugate(h, y: float) -> tuple[float, float]:
    """``(argmax, sup_x x y - h(x))`` by direct search."""
    c, _ = convex_min(lambda x: h(x) - y * x, 0.0)
    a, b, g, d, e = h.coefficients
    x = _recentred_min((a, b, g, d - y, 0.0), c, 1e-4 * max(1.0, abs(c)))
    return x, -(h(x) - y * x)


def reciprocal_prox(alpha: float, y: float, n: int = 2000) -> float:
    """Minimiser of ``alpha/x + (x - y)^2/2`` over ``x > 0``: log grid, then golden."""
    def obj(x: float) -> float:
        return alpha / x + 0.5 * (x - y) ** 2

    xs = np.geomspace(1e-9, max(10.0, 2.0 * abs(y) + alpha + 2.0), n)
    vals = alpha / xs + 0.5 * (xs - y) ** 2
    i = int(np.argmin(vals))
    lo, hi = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, n - 1)])
    return golden_min(obj, lo, hi, 1e-15 * max(1.0, hi))[0]


def epigraph_projection(alpha: float, vec: np.ndarray, eta: float,
                        n: int = 400) -> tuple[np.ndarray, float]:
    """Nearest boundary point of ``{alpha ||y||^2 <= eta}`` to an exterior point.

    The projection keeps the direction of ``vec``, so the search is over the
    radial boundary parameter ``t`` with boundary point ``(t u, alpha t^2)``.
    """
    vec = np.asarray(vec, dtype=np.float64)
    nu = float(np.linalg.norm(vec))
    u = vec / nu if nu > 0 else np.zeros_like(vec)

    def obj(t: float) -> float:
        return (t - nu) ** 2 + (alpha * t * t - eta) ** 2

    t, _ = grid_golden_min(obj, 0.0, nu, n, 1e-14 * max(1.0, nu))
    return t * u, alpha * t * t


def perspective_prox(gamma: float, vec: np.ndarray, eta: float) -> tuple[np.ndarray, float]:
    """Prox of ``gamma ||u||^2/(2 mu)`` at ``(vec, eta)`` by direct search.

    For fixed ``mu > 0`` the best ``u`` is ``vec / (1 + gamma/mu)``; the
    remaining function of ``mu`` is convex and searched by golden section.
    The origin, where the closed perspective is 0, is compared separately.
    """
    vec = np.asarray(vec, dtype=np.float64)
    nu = float(np.linalg.norm(vec))

    def obj(mu: float) -> float:
        t = nu / (1.0 + gamma / mu)
        return gamma * t * t / (2.0 * mu) + 0.5 * (t - nu) ** 2 + 0.5 * (mu - eta) ** 2

    top = max(eta, 0.0) + nu * nu / (2.0 * gamma) + 1.0
    mu, fmu = grid_golden_min(obj, 1e-300, top, 400, 1e-15 * top)
    origin = 0.5 * (nu * nu + eta * eta)
    if origin <= fmu:
        return np.zeros_like(vec), 0.0
    return vec / (1.0 + gamma / mu), mu


def saddle_root(kind: str, alpha: float, beta: float, zeta: float, gamma: float) -> float:
    """Root in ``(-1, 1)`` of the monotone scalar equation of a saddle case."""
    a, b2, zz = alpha, beta * beta, zeta * zeta
    if kind == "antidiag":
        def func(x: float) -> float:
            return 2.0 * zz / (1.0 - x) ** 2 + 2.0 * a * a * x / b2 + 2.0 * a * gamma
    else:
        def func(x: float) -> float:
            return 2.0 * zz / (1.0 + x) ** 2 - 2.0 * a * a * x / b2 - 2.0 * a * gamma
    return bisect_interval(func, -1.0 + 1e-15, 1.0 - 1e-15, 1e-16)


def saddle_local_best(alpha: float, beta: float, target: tuple, center: tuple,
                      rng: np.random.Generator, radius: float = 1e-3,
                      n: int = 200) -> float:
    """Smallest weighted distance from ``target`` to points of the saddle near ``center``.

    Points are drawn as ``(x', y', <x', y'>/alpha)`` with ``x', y'`` perturbed
    around the centre's first two components in random directions and scales.
    """
    tx, ty, tg = (np.asarray(target[0], float), np.asarray(target[1], float), float(target[2]))
    cx, cy = np.asarray(center[0], float), np.asarray(center[1], float)
    best = math.inf
    for r in radius * np.geomspace(1e-3, 1.0, 8):
        for _ in range(n // 8):
            xp = cx + r * rng.normal(size=cx.shape)
            yp = cy + r * rng.normal(size=cy.shape)
            gp = float(xp @ yp) / alpha
            d = math.sqrt(float((xp - tx) @ (xp - tx) + (yp - ty) @ (yp - ty))
                          + (beta * (gp - tg)) ** 2)
            best = min(best, d)
    return best


def reciprocal_conjugate(alpha: float, y: float) -> float:
    """``sup_{x > 0} x y - alpha/x`` by direct search (``inf`` for ``y > 0``)."""
    if y > 0.0:
        return math.inf
    if y == 0.0:
        return 0.0
    xs = np.geomspace(1e-9, 1e9, 4000)
    vals = alpha / xs - y * xs
    i = int(np.argmin(vals))
    _, fx = golden_min(lambda x: alpha / x - y * x, float(xs[max(i - 1, 0)]),
                       float(xs[min(i + 1, xs.size - 1)]), 1e-15)
    return -fx


def census_many(a, b, c, d) -> np.ndarray:
    """Number of distinct real roots of each cubic, from the signs of ``f`` at its
    critical points. Exact zeros at a critical point count as a double root."""
    a, b, c, d = (np.asarray(v, dtype=np.float64) for v in (a, b, c, d))
    disc = b * b - 3.0 * a * c
    out = np.ones(a.shape, dtype=np.int8)
    m = disc > 0
    if not np.any(m):
        return out
    s = np.sqrt(disc[m])
    am, bm, cm, dm = a[m], b[m], c[m], d[m]
    x1 = (-bm - s) / (3.0 * am)
    x2 = (-bm + s) / (3.0 * am)
    f1 = ((am * x1 + bm) * x1 + cm) * x1 + dm
    f2 = ((am * x2 + bm) * x2 + cm) * x2 + dm
    prod = np.sign(f1) * np.sign(f2)
    out[m] = np.where(prod < 0, 3, np.where(prod == 0, 2, 1))
    return out
