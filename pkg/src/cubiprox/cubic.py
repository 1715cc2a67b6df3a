"""Closed-form real roots of real cubics.

A general cubic ``a x^3 + b x^2 + c x + d`` is shifted by its inflection
point ``x0 = -b/(3a)`` onto the depressed cubic ``z^3 + p z + q``. The sign of

    delta = (p/3)^3 + (q/2)^2

then decides between one real root (radical formula), a simple plus a double
root (rational formula) and three simple real roots (trigonometric formula).
All roots are finished with at most three guarded Newton steps on the
original polynomial.

The numeric work happens in the kernel chosen by :mod:`cubiprox._backend`;
this module wraps it in value types.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

from ._backend import kernels
from .errors import DegenerateDegreeError, DomainError


class RootKind(Enum):
    ONE_SIMPLE = kernels.ONE_SIMPLE
    ONE_TRIPLE = kernels.ONE_TRIPLE
    SIMPLE_AND_DOUBLE = kernels.SIMPLE_AND_DOUBLE
    THREE_SIMPLE = kernels.THREE_SIMPLE


class Branch(Enum):
    SINGLE_REAL = kernels.SINGLE_REAL
    DOUBLE_ROOT = kernels.DOUBLE_ROOT
    THREE_REAL = kernels.THREE_REAL

    @property
    def real_root_count(self) -> int:
        return self.value + 1


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class DepressedCubic:
    """``z^3 + p z + q``."""

    p: float
    q: float

    def __post_init__(self) -> None:
        _check_finite(p=self.p, q=self.q)
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    def discriminant(self) -> float:
        return (self.p / 3.0) ** 3 + (self.q / 2.0) ** 2

    def __call__(self, z: float) -> float:
        return (z * z + self.p) * z + self.q

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        return (1.0, 0.0, self.p, self.q)


@dataclass(frozen=True)
class Cubic:
    """``a x^3 + b x^2 + c x + d`` with ``a != 0``; ``a < 0`` is allowed."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        _check_finite(a=self.a, b=self.b, c=self.c, d=self.d)
        if self.a == 0:
            raise DegenerateDegreeError("leading coefficient a must be nonzero")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def inflection(self) -> float:
        return -self.b / (3.0 * self.a)

    def depress(self) -> DepressedCubic:
        """The depressed cubic ``g`` with ``a g(x - x0) = f(x)``."""
        _, p, q, _, _ = kernels.depress(self.a, self.b, self.c, self.d)
        return DepressedCubic(p, q)

    def derivative_roots(self) -> tuple[float, ...]:
        """Sorted real critical points of ``f`` (empty when ``b^2 <= 3ac``)."""
        a, b, c = self.a, self.b, self.c
        disc = b * b - 3.0 * a * c
        if disc <= 0.0:
            return ()
        s = math.sqrt(disc)
        # f'(x)/3 = a x^2 + (2b/3) x + c/3; the stable quadratic formula
        big = -(b + math.copysign(s, b)) / (3.0 * a)
        small = (c / (3.0 * a)) / big if big != 0.0 else 0.0
        return tuple(sorted((big, small)))

    def __call__(self, x: float) -> float:
        return ((self.a * x + self.b) * x + self.c) * x + self.d

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


AnyCubic = Union[Cubic, DepressedCubic]


@dataclass(frozen=True)
class RealRootSet:
    """Real roots of a real cubic with their multiplicities.

    ``roots`` holds the distinct real roots in ascending order and
    ``multiplicities`` their orders (always summing to 3). ``complex_pair``
    is ``(real part, positive imaginary part)`` of the nonreal conjugate pair
    and is present exactly when ``kind`` is ``ONE_SIMPLE``.
    """

    kind: RootKind
    roots: tuple[float, ...]
    multiplicities: tuple[int, ...]
    complex_pair: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if len(self.roots) != len(self.multiplicities):
            raise ValueError("roots and multiplicities differ in length")
        if sum(self.multiplicities) + (2 if self.complex_pair else 0) != 3:
            raise ValueError("total multiplicity must be 3")
        if any(r1 >= r2 for r1, r2 in zip(self.roots, self.roots[1:])):
            raise ValueError(f"roots not strictly ascending: {self.roots}")
        if (self.complex_pair is not None) != (self.kind is RootKind.ONE_SIMPLE):
            raise ValueError("complex pair present iff kind is ONE_SIMPLE")
        if self.complex_pair is not None and not self.complex_pair[1] > 0.0:
            raise ValueError("imaginary part of the complex pair must be positive")

    @property
    def simple(self) -> float:
        """The simple root for ``SIMPLE_AND_DOUBLE`` (and ``ONE_SIMPLE``)."""
        if self.kind not in (RootKind.SIMPLE_AND_DOUBLE, RootKind.ONE_SIMPLE):
            raise AttributeError(f"{self.kind.name} has no distinguished simple root")
        return self.roots[self.multiplicities.index(1)]

    @property
    def double(self) -> float:
        if self.kind is not RootKind.SIMPLE_AND_DOUBLE:
            raise AttributeError(f"{self.kind.name} has no double root")
        return self.roots[self.multiplicities.index(2)]

    @property
    def real_count(self) -> int:
        """Number of distinct real roots."""
        return len(self.roots)

    def with_multiplicity(self) -> tuple[float, ...]:
        """Real roots repeated according to multiplicity."""
        out: list[float] = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([r] * m)
        return tuple(out)

    def all_roots(self) -> tuple[complex, complex, complex]:
        """All three roots over the complex numbers."""
        out = [complex(r) for r in self.with_multiplicity()]
        if self.complex_pair is not None:
            re, im = self.complex_pair
            out += [complex(re, im), complex(re, -im)]
        return tuple(out)  # type: ignore[return-value]

    def shifted(self, dx: float) -> "RealRootSet":
        pair = None
        if self.complex_pair is not None:
            pair = (self.complex_pair[0] + dx, self.complex_pair[1])
        return RealRootSet(self.kind, tuple(r + dx for r in self.roots),
                           self.multiplicities, pair)


@dataclass(frozen=True)
class Trichotomy:
    branch: Branch
    delta: float
    p: float
    q: float
    theta: float | None = None


@dataclass(frozen=True)
class MonotoneInterval:
    lo: float
    hi: float
    increasing: bool


def _root_set(raw: tuple) -> RealRootSet:
    kind, r0, r1, r2, re, im = raw[:6]
    if kind == kernels.THREE_SIMPLE:
        return RealRootSet(RootKind.THREE_SIMPLE, (r0, r1, r2), (1, 1, 1))
    if kind == kernels.SIMPLE_AND_DOUBLE:
        if r0 < r1:
            return RealRootSet(RootKind.SIMPLE_AND_DOUBLE, (r0, r1), (1, 2))
        return RealRootSet(RootKind.SIMPLE_AND_DOUBLE, (r1, r0), (2, 1))
    if kind == kernels.ONE_TRIPLE:
        return RealRootSet(RootKind.ONE_TRIPLE, (r0,), (3,))
    if not im > 0.0:
        # pair collapsed onto the real axis in floating point: report the
        # double (or triple) root it numerically is
        if re == r0:
            return RealRootSet(RootKind.ONE_TRIPLE, (r0,), (3,))
        return _root_set((kernels.SIMPLE_AND_DOUBLE, r0, re, math.nan, math.nan, math.nan))
    return RealRootSet(RootKind.ONE_SIMPLE, (r0,), (1,), (re, im))


def solve_depressed(g: DepressedCubic) -> RealRootSet:
    """All real roots of ``z^3 + p z + q`` with multiplicities."""
    if not isinstance(g, DepressedCubic):
        g = DepressedCubic(*g)
    return _root_set(kernels.solve_depressed(g.p, g.q))


def solve_general(f: Cubic) -> RealRootSet:
    """All real roots of ``a x^3 + b x^2 + c x + d`` with multiplicities.

    Raises :class:`DegenerateDegreeError` for ``a == 0``; quadratics are the
    caller's business.
    """
    if not isinstance(f, Cubic):
        f = Cubic(*f)
    return _root_set(kernels.solve_cubic(f.a, f.b, f.c, f.d))


def classify(g: AnyCubic) -> Trichotomy:
    """Which of the three real-root configurations ``g`` falls into."""
    if isinstance(g, Cubic):
        branch, delta, theta, p, q = kernels.classify_cubic(g.a, g.b, g.c, g.d)
    else:
        if not isinstance(g, DepressedCubic):
            g = DepressedCubic(*g)
        p, q = g.p, g.q
        branch, delta, theta = kernels.classify_pq(p, q)
    return Trichotomy(Branch(branch), delta, p, q,
                      None if math.isnan(theta) else theta)


def delta_tolerance(f: AnyCubic) -> float:
    """Band around 0 inside which ``delta`` is snapped to the double-root case.

    A relative part ``1e-12 max(|p/3|^3, (q/2)^2)`` plus the rounding error
    that forming ``p`` and ``q`` from the coefficients can introduce.
    """
    if isinstance(f, Cubic):
        a, b, c, d = f.coefficients
        if a < 0:
            a, b, c, d = -a, -b, -c, -d
        _, p, q, ps, qs = kernels.depress(a, b, c, d)
    else:
        p, q, ps, qs = f.p, f.q, 0.0, 0.0
    return kernels.tolerances(p, q, ps, qs)[2]


def evaluate(f: AnyCubic, x: float) -> float:
    """Horner evaluation of either cubic form."""
    a, b, c, d = f.coefficients
    return ((a * x + b) * x + c) * x + d


def residual_scale(f: AnyCubic, x: float) -> float:
    """``|a| M^3 + |b| M^2 + |c| M + |d|`` with ``M = max(1, |x|)``."""
    a, b, c, d = f.coefficients
    m = max(1.0, abs(x))
    return ((abs(a) * m + abs(b)) * m + abs(c)) * m + abs(d)


def monotone_intervals(f: Cubic) -> list[MonotoneInterval]:
    """Maximal intervals on which ``f`` is strictly monotone.

    One interval (the whole line) when ``b^2 <= 3ac``, otherwise three,
    split at the critical points ``x- < x+``.
    """
    up = f.a > 0
    crit = f.derivative_roots()
    if not crit:
        return [MonotoneInterval(-math.inf, math.inf, up)]
    lo, hi = crit
    return [
        MonotoneInterval(-math.inf, lo, up),
        MonotoneInterval(lo, hi, not up),
        MonotoneInterval(hi, math.inf, up),
    ]


class RootBatch(NamedTuple):
    """Column-wise result of :func:`solve_many`.

    ``kinds`` holds ``RootKind`` values; ``roots[i]`` is laid out like the
    kernel tuple (simple/double for kind 2, ascending for kind 3, NaN padding);
    ``pairs[i]`` is ``(re, im)`` for kind 0 and NaN otherwise.
    """

    kinds: np.ndarray
    roots: np.ndarray
    pairs: np.ndarray
    deltas: np.ndarray


def solve_many(a, b, c, d) -> RootBatch:
    """Solve many cubics at once; arrays broadcast against each other."""
    a, b, c, d = np.broadcast_arrays(*(np.asarray(v, dtype=np.float64) for v in (a, b, c, d)))
    a, b, c, d = (np.ravel(v) for v in (a, b, c, d))
    if not np.all(np.isfinite(a) & np.isfinite(b) & np.isfinite(c) & np.isfinite(d)):
        raise DomainError("coefficients must be finite")
    if np.any(a == 0):
        raise DegenerateDegreeError("leading coefficient a must be nonzero")
    return RootBatch(*kernels.solve_batch(a, b, c, d))
