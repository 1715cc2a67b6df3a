"""Randomised closed-form vs oracle comparisons, shared by ``cubiprox check``
and the test suite."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracle
from .cubic import Cubic, delta_tolerance, solve_many
from .epigraph import project_epigraph
from .perspective import prox_perspective
from .points import LabeledPoint
from .quartic import ConvexQuartic, conjugate, prox
from .reciprocal import ReciprocalFn, prox_reciprocal
from .saddle import ANTIDIAG, DIAG, SaddleCase, SaddleSet, project


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    n: int
    max_error: float
    tol: float
    seconds: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol


# -- instance generators ------------------------------------------------------

def random_cubics(rng: np.random.Generator, n: int, bound: float = 10.0,
                  min_lead: float = 0.1) -> tuple[np.ndarray, ...]:
    """Coefficients uniform in ``[-bound, bound]`` with ``|a| >= min_lead``."""
    a = rng.uniform(min_lead, bound, n) * rng.choice([-1.0, 1.0], n)
    b, c, d = rng.uniform(-bound, bound, (3, n))
    return a, b, c, d


def random_convex_quartic(rng: np.random.Generator) -> ConvexQuartic:
    alpha = 10 ** rng.uniform(-1, 1)
    beta = rng.uniform(-3, 3)
    gamma = 3 * beta * beta / (8 * alpha) + rng.exponential(1.0)
    return ConvexQuartic(alpha, beta, gamma, rng.uniform(-5, 5), rng.uniform(-5, 5))


def random_exterior_point(rng: np.random.Generator, alpha: float, n: int) -> LabeledPoint:
    while True:
        vec = rng.normal(size=n) * 10 ** rng.uniform(-1, 1)
        eta = rng.uniform(-5, 5)
        if alpha * float(vec @ vec) > eta:
            return LabeledPoint(vec, eta)


def random_saddle(rng: np.random.Generator, kind: str) -> tuple[SaddleSet, SaddleCase]:
    """A valid instance whose precondition holds with a random positive margin."""
    a = rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-1, 1)
    b = 10 ** rng.uniform(-1, 1)
    z = rng.normal(size=int(rng.integers(1, 4))) * 10 ** rng.uniform(-1, 1)
    zz = float(z @ z)
    margin = 10 ** rng.uniform(-3, 1)
    if kind == ANTIDIAG:
        g = (a * a / b ** 2 - zz / 4.0 - margin) / a
    else:
        g = (zz / 4.0 + margin - a * a / b ** 2) / a
    return SaddleSet(a, b), SaddleCase(kind, z, g)


def random_perspective_input(rng: np.random.Generator) -> tuple[float, LabeledPoint]:
    gamma = 10 ** rng.uniform(-1, 1)
    n = int(rng.integers(1, 4))
    vec = rng.normal(size=n) * 10 ** rng.uniform(-1, 0.7)
    return gamma, LabeledPoint(vec, rng.uniform(-5, 5))


# -- suites -------------------------------------------------------------------

def _timed(name: str, n: int, tol: float, body: Callable[[], float]) -> SuiteResult:
    t0 = time.perf_counter()
    err = body()
    return SuiteResult(name, n, err, tol, time.perf_counter() - t0)


def check_cubic(rng: np.random.Generator, n: int = 100_000, tol: float = 1e-9) -> SuiteResult:
    """Scaled residuals, plus a census mismatch (counted as infinite error)
    wherever ``delta`` is outside the classification band."""
    def body() -> float:
        a, b, c, d = random_cubics(rng, n)
        rb = solve_many(a, b, c, d)
        scale_err = 0.0
        for j in range(3):
            r = rb.roots[:, j]
            m = np.isfinite(r)
            rr, aa, bb, cc, dd = r[m], a[m], b[m], c[m], d[m]
            M = np.maximum(1.0, np.abs(rr))
            res = np.abs(((aa * rr + bb) * rr + cc) * rr + dd)
            scale = ((np.abs(aa) * M + np.abs(bb)) * M + np.abs(cc)) * M + np.abs(dd)
            scale_err = max(scale_err, float(np.max(res / scale, initial=0.0)))
        count = np.array([1, 1, 2, 3])[rb.kinds]
        census = oracle.census_many(a, b, c, d)
        tol_d = np.array([delta_tolerance(Cubic(*t)) for t in zip(a, b, c, d)])
        clear = np.abs(rb.deltas) > tol_d
        if np.any(count[clear] != census[clear]):
            return math.inf
        return scale_err
    return _timed("cubic", n, tol, body)


def check_quartic(rng: np.random.Generator, n: int = 1000, tol: float = 1e-6) -> SuiteResult:
    def body() -> float:
        err = 0.0
        for _ in range(n):
            h = random_convex_quartic(rng)
            y = rng.uniform(-20, 20)
            err = max(err, abs(prox(h, y) - oracle.quartic_prox(h, y)))
            cv = conjugate(h, y)
            _, val = oracle.quartic_conjugate(h, y)
            err = max(err, abs(cv.value - val) / max(1.0, abs(val)))
        return err
    return _timed("quartic", n, tol, body)


def check_reciprocal(rng: np.random.Generator, n: int = 1000, tol: float = 1e-6) -> SuiteResult:
    def body() -> float:
        err = 0.0
        for _ in range(n):
            alpha = 10 ** rng.uniform(-1, 1)
            y = rng.uniform(-50, 50)
            err = max(err, abs(prox_reciprocal(ReciprocalFn(alpha), y)
                               - oracle.reciprocal_prox(alpha, y)))
        return err
    return _timed("reciprocal", n, tol, body)


def check_epigraph(rng: np.random.Generator, n: int = 1000, tol: float = 1e-6) -> SuiteResult:
    """Excess of the closed-form distance over the oracle's."""
    def body() -> float:
        err = 0.0
        for _ in range(n):
            alpha = float(rng.choice([0.5, 1.0, 3.0]))
            pt = random_exterior_point(rng, alpha, int(rng.choice([1, 2, 5])))
            got = project_epigraph(alpha, pt).point
            gv, gs = oracle.epigraph_projection(alpha, pt.vec, pt.scalar)
            ref = LabeledPoint(gv, gs)
            err = max(err, pt.distance(got) - pt.distance(ref))
        return err
    return _timed("epigraph", n, tol, body)


def check_saddle(rng: np.random.Generator, n: int = 10_000, tol: float = 1e-8) -> SuiteResult:
    """Root error against bisection on the scalar equation and membership residual."""
    def body() -> float:
        err = 0.0
        for i in range(n):
            kind = ANTIDIAG if i % 2 == 0 else DIAG
            S, case = random_saddle(rng, kind)
            r = project(S, case)
            x_ref = oracle.saddle_root(kind, S.alpha, S.beta, case.zeta, case.gamma)
            scale = max(1.0, case.zeta ** 2, abs(S.alpha * case.gamma))
            member = abs(S.membership_residual(r.p1, r.p2, r.p3)) / scale
            err = max(err, abs(r.root - x_ref), member)
        return err
    return _timed("saddle", n, tol, body)


def check_perspective(rng: np.random.Generator, n: int = 1000, tol: float = 1e-5) -> SuiteResult:
    def body() -> float:
        err = 0.0
        for _ in range(n):
            gamma, pt = random_perspective_input(rng)
            got = prox_perspective(gamma, pt).point
            rv, rs = oracle.perspective_prox(gamma, pt.vec, pt.scalar)
            err = max(err, got.distance(LabeledPoint(rv, rs)))
        return err
    return _timed("perspective", n, tol, body)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "cubic": check_cubic,
    "quartic": check_quartic,
    "reciprocal": check_reciprocal,
    "epigraph": check_epigraph,
    "saddle": check_saddle,
    "perspective": check_perspective,
}
