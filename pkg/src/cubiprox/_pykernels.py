"""Pure-Python cubic kernels.

Line-for-line twin of ``_ckernels.pyx``. It is used when the compiled
extension is unavailable or ``CUBIPROX_PURE_PYTHON`` is set; the test suite
holds the two implementations to each other.

Every solver returns the flat tuple::

    (kind, r0, r1, r2, re, im, p, q, delta, theta)

with ``kind`` one of the ``ONE_SIMPLE`` .. ``THREE_SIMPLE`` codes below.
Unused slots are NaN. For ``SIMPLE_AND_DOUBLE`` ``r0`` is the simple root and
``r1`` the double root; for ``THREE_SIMPLE`` the roots are ascending.
"""
import math

import numpy as np

ONE_SIMPLE = 0
ONE_TRIPLE = 1
SIMPLE_AND_DOUBLE = 2
THREE_SIMPLE = 3

SINGLE_REAL = 0
DOUBLE_ROOT = 1
THREE_REAL = 2

REL_TOL = 1e-12
ROUNDING = 64.0 * 2.220446049250313e-16
NEWTON_STEPS = 3

_NAN = math.nan
_INF = math.inf
_HALF_SQRT3 = 0.5 * math.sqrt(3.0)
_TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi
_SAFE_LO = 2.0 ** -100
_SAFE_HI = 2.0 ** 100

BACKEND = "python"


def _cbrt_pow(t):
    """Real cube root, odd in ``t``."""
    if t == 0.0 or not math.isfinite(t):
        return t
    a = abs(t)
    r = a ** (1.0 / 3.0)
    # one Newton step brings pow's result to within an ulp or so of the true root
    r -= (r - a / (r * r)) / 3.0
    return math.copysign(r, t)


cbrt = getattr(math, "cbrt", _cbrt_pow)


def depress(a, b, c, d):
    """Return ``(x0, p, q, p_scale, q_scale)`` for a cubic with ``a > 0``.

    ``p_scale`` and ``q_scale`` bound the magnitudes of the terms summed into
    ``p`` and ``q``; they size the rounding part of the classification
    tolerance.
    """
    B = b / a
    C = c / a
    D = d / a
    x0 = -B / 3.0
    BB = B * B
    p = C - BB / 3.0
    q = D - B * C / 3.0 + 2.0 * BB * B / 27.0
    p_scale = abs(C) + BB / 3.0
    q_scale = abs(D) + abs(B * C) / 3.0 + 2.0 * BB * abs(B) / 27.0
    return x0, p, q, p_scale, q_scale


def tolerances(p, q, p_scale, q_scale):
    """Return ``(tol_p, tol_q, tol_delta)`` used to snap p, q and delta to zero."""
    p3 = p / 3.0
    q2 = q / 2.0
    tol_p = REL_TOL * abs(p) + ROUNDING * p_scale
    tol_q = REL_TOL * abs(q) + ROUNDING * q_scale
    tol_delta = REL_TOL * max(abs(p3 * p3 * p3), q2 * q2) + ROUNDING * (
        p3 * p3 * p_scale + abs(q2) * q_scale
    )
    return tol_p, tol_q, tol_delta


def _ldexp(x, k):
    # C semantics: overflow saturates to +-inf instead of raising
    try:
        return math.ldexp(x, k)
    except OverflowError:
        return math.copysign(_INF, x)


def scale_exponent(p, q):
    """``k`` such that ``z = 2^k w`` brings the roots of ``z^3 + p z + q`` near unit size.

    Zero unless the root scale ``max(|p|^(1/2), |q|^(1/3))`` is outside
    ``[2^-100, 2^100]``, where forming ``(p/3)^3`` could underflow or overflow.
    """
    m = max(math.sqrt(abs(p)), cbrt(abs(q)))
    if m == 0.0 or _SAFE_LO < m < _SAFE_HI:
        return 0
    return math.frexp(m)[1]


def classify_pq(p, q, p_scale=0.0, q_scale=0.0):
    """Return ``(branch, delta, theta)`` for ``z^3 + p z + q``."""
    k = scale_exponent(p, q)
    if k:
        branch, delta, theta = _classify_unit(
            math.ldexp(p, -2 * k), math.ldexp(q, -3 * k),
            math.ldexp(p_scale, -2 * k), math.ldexp(q_scale, -3 * k))
        return branch, _ldexp(delta, 6 * k), theta
    return _classify_unit(p, q, p_scale, q_scale)


def _classify_unit(p, q, p_scale, q_scale):
    p3 = p / 3.0
    q2 = q / 2.0
    delta = p3 * p3 * p3 + q2 * q2
    tol_p, _, tol_delta = tolerances(p, q, p_scale, q_scale)
    if abs(p) <= tol_p:
        return SINGLE_REAL, delta, _NAN
    if abs(delta) <= tol_delta:
        if p < 0.0:
            return DOUBLE_ROOT, delta, _NAN
        return SINGLE_REAL, delta, _NAN
    if delta > 0.0:
        return SINGLE_REAL, delta, _NAN
    m = math.sqrt(-p3)
    arg = min(1.0, max(-1.0, -q2 / (m * m * m)))
    return THREE_REAL, delta, math.acos(arg)


def _solve_pq(p, q, p_scale, q_scale):
    """Closed-form roots of ``z^3 + p z + q`` before shifting and polishing."""
    k = scale_exponent(p, q)
    if k:
        kind, z0, z1, z2, im, delta, theta = _solve_unit(
            math.ldexp(p, -2 * k), math.ldexp(q, -3 * k),
            math.ldexp(p_scale, -2 * k), math.ldexp(q_scale, -3 * k))
        return (kind, _ldexp(z0, k), _ldexp(z1, k), _ldexp(z2, k),
                _ldexp(im, k), _ldexp(delta, 6 * k), theta)
    return _solve_unit(p, q, p_scale, q_scale)


def _solve_unit(p, q, p_scale, q_scale):
    branch, delta, theta = _classify_unit(p, q, p_scale, q_scale)
    if branch == THREE_REAL:
        k = 2.0 * math.sqrt(-p / 3.0)
        z0 = k * math.cos(theta / 3.0)
        z1 = k * math.cos((theta + _TWO_PI) / 3.0)
        z2 = k * math.cos((theta + _FOUR_PI) / 3.0)
        return THREE_SIMPLE, z1, z2, z0, _NAN, delta, theta
    if branch == DOUBLE_ROOT:
        return SIMPLE_AND_DOUBLE, 3.0 * q / p, -1.5 * q / p, _NAN, _NAN, delta, theta
    tol_p, tol_q, _ = tolerances(p, q, p_scale, q_scale)
    if abs(p) <= tol_p and abs(q) <= tol_q:
        return ONE_TRIPLE, 0.0, _NAN, _NAN, _NAN, delta, theta
    # u*v = -p/3: the smaller cube root comes from the larger one, and the real
    # root from u^3 + v^3 = -q, so neither step subtracts nearly equal numbers.
    s = math.sqrt(delta) if delta > 0.0 else 0.0
    h = -0.5 * q
    u = cbrt(h + math.copysign(s, h))
    v = -p / (3.0 * u) if u != 0.0 else 0.0
    den = u * u - u * v + v * v
    z = -q / den if den != 0.0 else u + v
    return ONE_SIMPLE, z, _NAN, _NAN, _HALF_SQRT3 * abs(u - v), delta, theta


def _newton(a, b, c, d, x, max_step):
    fx = ((a * x + b) * x + c) * x + d
    for _ in range(NEWTON_STEPS):
        if fx == 0.0:
            break
        df = (3.0 * a * x + 2.0 * b) * x + c
        if df == 0.0:
            break
        step = fx / df
        if not abs(step) <= max_step:
            break
        xn = x - step
        fn = ((a * xn + b) * xn + c) * xn + d
        if not abs(fn) < abs(fx):
            break
        x = xn
        fx = fn
    return x


def _newton_double(a, b, c, x, max_step):
    # a double root of f is a simple root of f'
    gx = (3.0 * a * x + 2.0 * b) * x + c
    for _ in range(NEWTON_STEPS):
        if gx == 0.0:
            break
        dg = 6.0 * a * x + 2.0 * b
        if dg == 0.0:
            break
        step = gx / dg
        if not abs(step) <= max_step:
            break
        xn = x - step
        gn = (3.0 * a * xn + 2.0 * b) * xn + c
        if not abs(gn) < abs(gx):
            break
        x = xn
        gx = gn
    return x


def _finish(a, b, c, d, x0, p, q, raw):
    kind, z0, z1, z2, im, delta, theta = raw
    re = _NAN
    if kind == THREE_SIMPLE:
        r0 = z0 + x0
        r1 = z1 + x0
        r2 = z2 + x0
        g01 = 0.5 * (r1 - r0)
        g12 = 0.5 * (r2 - r1)
        s0 = _newton(a, b, c, d, r0, g01)
        s1 = _newton(a, b, c, d, r1, min(g01, g12))
        s2 = _newton(a, b, c, d, r2, g12)
        if s0 < s1 < s2:
            r0, r1, r2 = s0, s1, s2
    elif kind == SIMPLE_AND_DOUBLE:
        r0 = z0 + x0
        r1 = z1 + x0
        gap = 0.5 * abs(r1 - r0)
        r0 = _newton(a, b, c, d, r0, gap)
        r1 = _newton_double(a, b, c, r1, gap)
        r2 = _NAN
    elif kind == ONE_TRIPLE:
        r0 = x0
        r1 = r2 = _NAN
    else:
        r0 = _newton(a, b, c, d, z0 + x0, _INF)
        r1 = r2 = _NAN
        # Vieta sum keeps the pair consistent with the polished real root.
        re = -0.5 * (b / a + r0)
    return kind, r0, r1, r2, re, im, p, q, delta, theta


def solve_depressed(p, q):
    """Solve ``z^3 + p z + q = 0`` for finite ``p, q``."""
    raw = _solve_pq(p, q, 0.0, 0.0)
    return _finish(1.0, 0.0, p, q, 0.0, p, q, raw)


def coefficient_exponent(a, b, c, d):
    """``k`` such that ``x = 2^k w`` brings the roots of the cubic near unit size.

    Zero unless ``max(|b/a|, |c/a|^(1/2), |d/a|^(1/3))`` is outside
    ``[2^-100, 2^100]``, where depressing the cubic could overflow.
    """
    m = max(abs(b / a), math.sqrt(abs(c / a)), cbrt(abs(d / a)))
    if m == 0.0 or _SAFE_LO < m < _SAFE_HI:
        return 0
    return math.frexp(m)[1]


def _rescaled(a, b, c, d, k):
    # monic cubic in w = x / 2^k; exact apart from the divisions by a
    return 1.0, math.ldexp(b / a, -k), math.ldexp(c / a, -2 * k), math.ldexp(d / a, -3 * k)


def solve_cubic(a, b, c, d):
    """Solve ``a x^3 + b x^2 + c x + d = 0`` for finite coefficients, ``a != 0``."""
    if a < 0.0:
        a, b, c, d = -a, -b, -c, -d
    k = coefficient_exponent(a, b, c, d)
    if k:
        a, b, c, d = _rescaled(a, b, c, d, k)
    x0, p, q, ps, qs = depress(a, b, c, d)
    raw = _solve_pq(p, q, ps, qs)
    out = _finish(a, b, c, d, x0, p, q, raw)
    if not k:
        return out
    kind, r0, r1, r2, re, im, p, q, delta, theta = out
    return (kind, _ldexp(r0, k), _ldexp(r1, k), _ldexp(r2, k), _ldexp(re, k), _ldexp(im, k),
            _ldexp(p, 2 * k), _ldexp(q, 3 * k), _ldexp(delta, 6 * k), theta)


def classify_cubic(a, b, c, d):
    """Return ``(branch, delta, theta, p, q)`` for a general cubic."""
    if a < 0.0:
        a, b, c, d = -a, -b, -c, -d
    k = coefficient_exponent(a, b, c, d)
    if k:
        a, b, c, d = _rescaled(a, b, c, d, k)
    _, p, q, ps, qs = depress(a, b, c, d)
    branch, delta, theta = classify_pq(p, q, ps, qs)
    return branch, _ldexp(delta, 6 * k), theta, _ldexp(p, 2 * k), _ldexp(q, 3 * k)


def solve_batch(a, b, c, d):
    """Vectorised :func:`solve_cubic`.

    Returns ``(kinds, roots, pairs, deltas)`` with shapes ``(n,)``, ``(n, 3)``,
    ``(n, 2)`` and ``(n,)``.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    d = np.ascontiguousarray(d, dtype=np.float64)
    n = a.shape[0]
    kinds = np.empty(n, dtype=np.int8)
    roots = np.empty((n, 3), dtype=np.float64)
    pairs = np.empty((n, 2), dtype=np.float64)
    deltas = np.empty(n, dtype=np.float64)
    for i in range(n):
        out = solve_cubic(float(a[i]), float(b[i]), float(c[i]), float(d[i]))
        kinds[i] = out[0]
        roots[i, 0] = out[1]
        roots[i, 1] = out[2]
        roots[i, 2] = out[3]
        pairs[i, 0] = out[4]
        pairs[i, 1] = out[5]
        deltas[i] = out[8]
    return kinds, roots, pairs, deltas
