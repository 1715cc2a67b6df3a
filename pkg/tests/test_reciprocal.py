import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubiprox import DomainError, ReciprocalFn, conjugate_reciprocal, prox_reciprocal
from cubiprox import oracle
from cubiprox.reciprocal import (
    prox_reciprocal_detail,
    trig_as_printed,
    trig_stable,
)

# bisection on x^3 - 2x^2 - 1 over [2, 3]
PROX_ALPHA1_Y2 = 2.2055694304005904

alphas = st.floats(1e-3, 1e3)
ys = st.floats(-1e3, 1e3)


def test_breakpoint():
    f = ReciprocalFn(1.0)
    assert f.breakpoint == pytest.approx(-3 * 4 ** (-1 / 3), rel=1e-15)
    assert f.breakpoint == pytest.approx(-1.88988, abs=1e-5)


@pytest.mark.parametrize("alpha", [0.0, -1.0, math.inf, math.nan])
def test_bad_alpha(alpha):
    with pytest.raises(DomainError):
        ReciprocalFn(alpha)


@pytest.mark.parametrize("y", [math.inf, -math.inf, math.nan])
def test_bad_y(y):
    with pytest.raises(DomainError):
        prox_reciprocal(ReciprocalFn(1.0), y)


@pytest.mark.parametrize("alpha, y, x", [
    (1.0, 0.0, 1.0),
    (1.0, 2.0, PROX_ALPHA1_Y2),
    (8.0, 0.0, 2.0),
])
def test_prox_examples(alpha, y, x):
    assert prox_reciprocal(ReciprocalFn(alpha), y) == pytest.approx(x, abs=1e-12)


@pytest.mark.parametrize("alpha", [1.0, 0.01, 27.0])
def test_prox_at_fold(alpha):
    f = ReciprocalFn(alpha)
    r = prox_reciprocal_detail(f, f.breakpoint)
    assert r.branch == "fold"
    assert r.x == pytest.approx((alpha / 4) ** (1 / 3), rel=1e-12)


@pytest.mark.parametrize("alpha, y, value", [
    (1.0, -1.0, -2.0),
    (1.0, 0.0, 0.0),
    (4.0, -1.0, -4.0),
    (1.0, 1.0, math.inf),
])
def test_conjugate_examples(alpha, y, value):
    assert conjugate_reciprocal(ReciprocalFn(alpha), y) == value


@given(alphas, st.floats(-1e3, -1e-6))
def test_conjugate_against_search(alpha, y):
    ref = oracle.reciprocal_conjugate(alpha, y)
    assert conjugate_reciprocal(ReciprocalFn(alpha), y) == pytest.approx(ref, rel=1e-8, abs=1e-12)


@given(alphas, st.floats(-1e12, 1e12))
def test_positive_root_of_stationarity(alpha, y):
    f = ReciprocalFn(alpha)
    x = prox_reciprocal(f, y)
    assert x > 0
    assert abs(f.stationarity(x, y)) <= f.residual_bound(y)
    # term-wise scale, far tighter than the bound above for large |y|
    assert abs(f.stationarity(x, y)) <= 1e-12 * max(alpha, x * x * (x + abs(y)))


@given(alphas, ys)
def test_branch_matches_discriminant(alpha, y):
    f = ReciprocalFn(alpha)
    r = prox_reciprocal_detail(f, y)
    assert not r.fallback
    t = y / 3
    assert r.delta == pytest.approx(alpha * (alpha / 4 + t ** 3), rel=1e-12, abs=1e-300)
    if r.branch == "cardano":
        assert y > f.breakpoint and r.delta > 0
    elif r.branch == "trig":
        assert y < f.breakpoint and r.delta < 0
    else:
        assert r.branch == "fold"


@pytest.mark.parametrize("alpha", [1.0, 0.1, 10.0])
@pytest.mark.parametrize("eps", [1e-3, 1e-6, 1e-9])
def test_continuity_at_fold(alpha, eps):
    f = ReciprocalFn(alpha)
    y0 = f.breakpoint
    lo, hi = prox_reciprocal_detail(f, y0 - eps), prox_reciprocal_detail(f, y0 + eps)
    assert (lo.branch, hi.branch) == ("trig", "cardano")
    assert abs(lo.x - hi.x) <= 10 * eps


@given(alphas, ys, ys)
def test_nonexpansive_and_monotone(alpha, y1, y2):
    f = ReciprocalFn(alpha)
    x1, x2 = prox_reciprocal(f, y1), prox_reciprocal(f, y2)
    assert abs(x1 - x2) <= abs(y1 - y2) * (1 + 1e-12) + 1e-12 * max(1, x1, x2)
    if y1 <= y2:
        assert x1 <= x2 + 1e-12 * max(1, x2)


@pytest.mark.parametrize("y", [1e3, 1e4, 1e6, 1e8, 1e9, 1e15])
def test_asymptotics(y):
    x = prox_reciprocal(ReciprocalFn(1.0), y)
    assert 0 <= x - y <= 2 / y ** 2


@pytest.mark.parametrize("y", [-1e3, -1e7, -1e9, -1e15])
def test_large_negative(y):
    x = prox_reciprocal(ReciprocalFn(1.0), y)
    ref = 0.0
    for _ in range(50):
        ref = math.sqrt(1 / (ref - y))
    assert x == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("y", np.linspace(-50, 50, 201))
def test_against_log_grid_golden(y):
    for alpha in (0.1, 1.0, 10.0):
        ref = oracle.reciprocal_prox(alpha, y)
        assert prox_reciprocal(ReciprocalFn(alpha), y) == pytest.approx(ref, abs=1e-6)


@given(alphas, st.floats(-1e3, -1e-3))
def test_trig_forms_agree_below_fold(alpha, y):
    f = ReciprocalFn(alpha)
    if y >= f.breakpoint * (1 + 1e-6):
        return
    stable = trig_stable(alpha, y)
    assert stable > 0
    printed = trig_as_printed(alpha, y)
    # arccos near -1 amplifies rounding by 1/psi, psi ~ sqrt(alpha/|y/3|^3)
    psi = math.sqrt(alpha / abs(y / 3) ** 3)
    assert abs(printed - stable) <= 16 * 2.0 ** -52 * max(1, abs(y)) / psi


def test_printed_trig_cancels_far_below_fold():
    y = -1e7
    exact = math.sqrt(1 / -y)
    assert trig_stable(1.0, y) == pytest.approx(exact, rel=1e-6)
    assert abs(trig_as_printed(1.0, y) - exact) > 1e-3 * exact
