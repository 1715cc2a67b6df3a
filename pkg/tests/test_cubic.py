import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cubiprox import (
    Branch,
    Cubic,
    DegenerateDegreeError,
    DepressedCubic,
    DomainError,
    RealRootSet,
    RootKind,
    classify,
    evaluate,
    monotone_intervals,
    residual_scale,
    solve_depressed,
    solve_general,
    solve_many,
)
from cubiprox.cubic import delta_tolerance

coef = st.floats(-10, 10, allow_nan=False)
lead = st.floats(0.1, 10).flatmap(lambda m: st.sampled_from([m, -m]))
# roots whose powers cannot underflow when the cubic is expanded
root_value = st.floats(-5, 5).filter(lambda r: r == 0 or abs(r) > 1e-50)


def cubics():
    return st.builds(Cubic, lead, coef, coef, coef)


def assert_residuals(f, roots, tol=1e-9):
    for r in roots.roots:
        assert abs(evaluate(f, r)) <= tol * residual_scale(f, r)


# -- worked examples ----------------------------------------------------------

@pytest.mark.parametrize("p, q, kind, roots", [
    (0.0, 0.0, RootKind.ONE_TRIPLE, (0.0,)),
    (-3.0, 2.0, RootKind.SIMPLE_AND_DOUBLE, (-2.0, 1.0)),
    (-1.0, 0.0, RootKind.THREE_SIMPLE, (-1.0, 0.0, 1.0)),
    (1.0, -2.0, RootKind.ONE_SIMPLE, (1.0,)),
    (0.0, -8.0, RootKind.ONE_SIMPLE, (2.0,)),
])
def test_depressed_examples(p, q, kind, roots):
    rs = solve_depressed(DepressedCubic(p, q))
    assert rs.kind is kind
    np.testing.assert_allclose(rs.roots, roots, atol=1e-14)


def test_depressed_double_root_multiplicities():
    rs = solve_depressed(DepressedCubic(-3.0, 2.0))
    assert rs.simple == pytest.approx(-2.0, abs=1e-14)
    assert rs.double == pytest.approx(1.0, abs=1e-14)
    assert rs.multiplicities == (1, 2)


def test_depressed_complex_pair():
    rs = solve_depressed(DepressedCubic(1.0, -2.0))
    re, im = rs.complex_pair
    assert re == pytest.approx(-0.5, abs=1e-15)
    assert im == pytest.approx(math.sqrt(7) / 2, abs=1e-15)


@pytest.mark.parametrize("coeffs, kind, roots", [
    ((1, -6, 11, -6), RootKind.THREE_SIMPLE, (1.0, 2.0, 3.0)),
    ((2, 0, -2, 0), RootKind.THREE_SIMPLE, (-1.0, 0.0, 1.0)),
    ((1, -3, 3, -1), RootKind.ONE_TRIPLE, (1.0,)),
    ((1, 0, -3, 2), RootKind.SIMPLE_AND_DOUBLE, (-2.0, 1.0)),
    ((-1, 6, -11, 6), RootKind.THREE_SIMPLE, (1.0, 2.0, 3.0)),
])
def test_general_examples(coeffs, kind, roots):
    rs = solve_general(Cubic(*coeffs))
    assert rs.kind is kind
    np.testing.assert_allclose(rs.roots, roots, atol=1e-13)


def test_small_scale_cubic_keeps_three_roots():
    # x^3 - 1e-4 x: a unit absolute floor on the delta band would call this a double root
    rs = solve_general(Cubic(1, 0, -1e-4, 0))
    assert rs.kind is RootKind.THREE_SIMPLE
    np.testing.assert_allclose(rs.roots, (-0.01, 0.0, 0.01), atol=1e-15)


@pytest.mark.parametrize("p, q, branch, delta, theta", [
    (-3.0, 2.0, Branch.DOUBLE_ROOT, 0.0, None),
    (-1.0, 0.0, Branch.THREE_REAL, -1 / 27, math.pi / 2),
    (1.0, 1.0, Branch.SINGLE_REAL, 1 / 27 + 1 / 4, None),
    (0.0, 5.0, Branch.SINGLE_REAL, 6.25, None),
])
def test_classify_examples(p, q, branch, delta, theta):
    t = classify(DepressedCubic(p, q))
    assert t.branch is branch
    assert t.delta == pytest.approx(delta, abs=1e-15)
    if theta is None:
        assert t.theta is None
    else:
        assert t.theta == pytest.approx(theta)


def test_classify_accepts_general_cubic():
    t = classify(Cubic(1, -6, 11, -6))
    assert t.branch is Branch.THREE_REAL
    assert (t.p, t.q) == pytest.approx((-1.0, 0.0))


@pytest.mark.parametrize("f, x, value", [
    (Cubic(1, -6, 11, -6), 2.0, 0.0),
    (DepressedCubic(0, 0), 5.0, 125.0),
    (Cubic(1, 0, 0, 0), -2.0, -8.0),
])
def test_evaluate(f, x, value):
    assert evaluate(f, x) == value


def test_depress_coefficients():
    a, b, c, d = 2.0, -3.0, 5.0, 7.0
    g = Cubic(a, b, c, d).depress()
    assert g.p == pytest.approx((3 * a * c - b * b) / (3 * a * a))
    assert g.q == pytest.approx((27 * a * a * d + 2 * b ** 3 - 9 * a * b * c) / (27 * a ** 3))


@pytest.mark.parametrize("coeffs, splits", [
    ((1, 0, -3, 0), (-1.0, 1.0)),
    ((1, 0, 1, 0), ()),
    ((1, -6, 11, -6), (2 - 1 / math.sqrt(3), 2 + 1 / math.sqrt(3))),
])
def test_monotone_intervals(coeffs, splits):
    pieces = monotone_intervals(Cubic(*coeffs))
    assert len(pieces) == len(splits) + 1
    np.testing.assert_allclose([p.hi for p in pieces[:-1]], splits, atol=1e-14)
    assert [p.increasing for p in pieces] == ([True, False, True] if splits else [True])


def test_monotone_intervals_negative_lead():
    assert [p.increasing for p in monotone_intervals(Cubic(-1, 0, 3, 0))] == [False, True, False]


# -- errors -------------------------------------------------------------------

def test_zero_lead_rejected():
    with pytest.raises(DegenerateDegreeError):
        Cubic(0, 1, 2, 3)
    with pytest.raises(DegenerateDegreeError):
        solve_many([1.0, 0.0], 1.0, 1.0, 1.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_nonfinite_rejected(bad):
    with pytest.raises(DomainError):
        DepressedCubic(bad, 0.0)
    with pytest.raises(DomainError):
        Cubic(1.0, bad, 0.0, 0.0)


def test_root_set_invariants():
    with pytest.raises(ValueError):
        RealRootSet(RootKind.THREE_SIMPLE, (2.0, 1.0, 3.0), (1, 1, 1))
    with pytest.raises(ValueError):
        RealRootSet(RootKind.ONE_SIMPLE, (1.0,), (1,))
    with pytest.raises(ValueError):
        RealRootSet(RootKind.ONE_SIMPLE, (1.0,), (1,), (0.0, -1.0))
    with pytest.raises(ValueError):
        RealRootSet(RootKind.SIMPLE_AND_DOUBLE, (1.0, 2.0), (1, 1))


# -- properties ---------------------------------------------------------------

@given(cubics())
def test_residual_and_multiplicity(f):
    rs = solve_general(f)
    assert sum(rs.multiplicities) + (2 if rs.complex_pair else 0) == 3
    assert_residuals(f, rs)


def _vieta_close(got, want, terms):
    assert abs(got - want) <= 1e-8 * max(1.0, abs(want), terms)


@given(cubics())
def test_vieta(f):
    rs = solve_general(f)
    roots = rs.all_roots()
    a, b, c, d = f.coefficients
    r1, r2, r3 = roots
    e1 = r1 + r2 + r3
    e2 = r1 * r2 + r1 * r3 + r2 * r3
    e3 = r1 * r2 * r3
    _vieta_close(e1.real, -b / a, sum(abs(r) for r in roots))
    _vieta_close(e2.real, c / a, abs(r1 * r2) + abs(r1 * r3) + abs(r2 * r3))
    _vieta_close(e3.real, -d / a, abs(e3))
    assert max(abs(e1.imag), abs(e2.imag), abs(e3.imag)) <= 1e-8 * max(1.0, abs(e3))


@given(cubics())
def test_three_real_roots_interleave_critical_points(f):
    rs = solve_general(f)
    assume(rs.kind is RootKind.THREE_SIMPLE)
    lo, hi = f.derivative_roots()
    r1, r2, r3 = rs.roots
    assert r1 < lo < r2 < hi < r3


@given(st.floats(1e-3, 10), st.floats(-0.999, 0.999))
def test_depressed_interleave(s, u):
    # |q/2| < (-p/3)^(3/2) puts delta < 0
    p, q = -s, 2 * u * (s / 3) ** 1.5
    rs = solve_depressed(DepressedCubic(p, q))
    assert rs.kind is RootKind.THREE_SIMPLE
    m = math.sqrt(-p / 3)
    r1, r2, r3 = rs.roots
    assert r1 < -m < r2 < m < r3


def _well_separated(f, rs):
    t = classify(f)
    return abs(t.delta) > 1e-6 * max(abs(t.p / 3) ** 3, (t.q / 2) ** 2, 1e-300)


@pytest.mark.parametrize("lam", [2.0, -1.0, 1e-3])
@given(f=cubics())
def test_scale_invariance(lam, f):
    rs = solve_general(f)
    assume(_well_separated(f, rs))
    scaled = solve_general(Cubic(*(lam * v for v in f.coefficients)))
    assert scaled.kind is rs.kind
    for r, s in zip(rs.roots, scaled.roots):
        assert abs(r - s) <= 1e-10 * max(1.0, abs(r))


@given(cubics())
def test_shift_consistency(f):
    rs = solve_general(f)
    assume(_well_separated(f, rs))
    g = solve_depressed(f.depress())
    x0 = f.inflection()
    assert g.kind is rs.kind
    for r, z in zip(rs.roots, g.roots):
        assert abs(r - (z + x0)) <= 1e-12 * max(1.0, abs(r), abs(x0)) * 10


@given(cubics())
def test_complex_pair_positive_and_consistent(f):
    rs = solve_general(f)
    assume(rs.kind is RootKind.ONE_SIMPLE)
    re, im = rs.complex_pair
    assert im > 0
    a, b, c, d = f.coefficients
    r = rs.roots[0]
    assert r * (re * re + im * im) == pytest.approx(-d / a, rel=1e-8, abs=1e-8)


@given(root_value, st.floats(0.01, 5), st.floats(0.1, 10).flatmap(
    lambda m: st.sampled_from([m, -m])))
def test_constructed_double_roots(r, gap, a):
    s = r + gap
    # a (x - r)^2 (x - s)
    f = Cubic(a, -a * (2 * r + s), a * (r * r + 2 * r * s), -a * r * r * s)
    rs = solve_general(f)
    assert rs.kind is RootKind.SIMPLE_AND_DOUBLE
    assert rs.double == pytest.approx(r, abs=1e-7)
    assert rs.simple == pytest.approx(s, abs=1e-7)


@given(root_value, st.floats(0.1, 10))
def test_constructed_triple_roots(r, a):
    f = Cubic(a, -3 * a * r, 3 * a * r * r, -a * r ** 3)
    rs = solve_general(f)
    assert rs.kind is RootKind.ONE_TRIPLE
    assert rs.roots[0] == pytest.approx(r, abs=1e-9)


def test_branch_matches_delta_sign(rng):
    for a, b, c, d in zip(*(rng.uniform(-10, 10, (4, 2000)))):
        if abs(a) < 0.1:
            continue
        f = Cubic(a, b, c, d)
        t = classify(f)
        if abs(t.delta) <= delta_tolerance(f):
            continue
        if t.branch is Branch.THREE_REAL:
            assert t.delta < 0 and 0 < t.theta < math.pi
        else:
            assert t.branch is Branch.SINGLE_REAL and t.delta > 0


def test_solve_many_matches_scalar(rng):
    a = rng.uniform(0.1, 10, 500) * rng.choice([-1, 1], 500)
    b, c, d = rng.uniform(-10, 10, (3, 500))
    batch = solve_many(a, b, c, d)
    for i in range(500):
        rs = solve_general(Cubic(a[i], b[i], c[i], d[i]))
        assert batch.kinds[i] == rs.kind.value
        finite = batch.roots[i][np.isfinite(batch.roots[i])]
        np.testing.assert_allclose(sorted(finite), rs.roots, rtol=0, atol=0)
