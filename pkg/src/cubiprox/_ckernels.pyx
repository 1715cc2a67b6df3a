# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cubic kernels; see ``_pykernels`` for the contract."""
from libc.math cimport acos, cos, sqrt, fabs, copysign, cbrt as c_cbrt, frexp, ldexp, NAN, INFINITY, M_PI

import numpy as np
cimport numpy as cnp

cnp.import_array()

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

BACKEND = "cython"

cdef double _REL_TOL = 1e-12
cdef double _ROUNDING = 64.0 * 2.220446049250313e-16
cdef int _STEPS = 3
cdef double _HALF_SQRT3 = 0.8660254037844386
cdef double _SAFE_LO = 7.888609052210118e-31  # 2^-100
cdef double _SAFE_HI = 1.2676506002282294e+30  # 2^100


ctypedef struct Roots:
    int kind
    double r0, r1, r2, re, im, p, q, delta, theta


cdef inline double _cbrt(double t) nogil:
    if t == 0.0:
        return 0.0
    return c_cbrt(t)


cdef inline void _tolerances(double p, double q, double ps, double qs,
                             double* tol_p, double* tol_q, double* tol_d) nogil:
    cdef double p3 = p / 3.0
    cdef double q2 = q / 2.0
    cdef double m = fabs(p3) * fabs(p3) * fabs(p3)
    if q2 * q2 > m:
        m = q2 * q2
    tol_p[0] = _REL_TOL * fabs(p) + _ROUNDING * ps
    tol_q[0] = _REL_TOL * fabs(q) + _ROUNDING * qs
    tol_d[0] = _REL_TOL * m + _ROUNDING * (p3 * p3 * ps + fabs(q2) * qs)


cdef inline int _scale_exponent(double p, double q) nogil:
    cdef double m = sqrt(fabs(p))
    cdef double r = c_cbrt(fabs(q))
    cdef int k = 0
    if r > m:
        m = r
    if m == 0.0 or (m > _SAFE_LO and m < _SAFE_HI):
        return 0
    frexp(m, &k)
    return k


cdef inline int _classify(double p, double q, double ps, double qs,
                          double* delta, double* theta) nogil:
    cdef int k = _scale_exponent(p, q)
    cdef int branch
    if k == 0:
        return _classify_unit(p, q, ps, qs, delta, theta)
    branch = _classify_unit(ldexp(p, -2 * k), ldexp(q, -3 * k),
                            ldexp(ps, -2 * k), ldexp(qs, -3 * k), delta, theta)
    delta[0] = ldexp(delta[0], 6 * k)
    return branch


cdef inline int _classify_unit(double p, double q, double ps, double qs,
                               double* delta, double* theta) nogil:
    cdef double p3 = p / 3.0
    cdef double q2 = q / 2.0
    cdef double tol_p, tol_q, tol_d, m, arg
    delta[0] = p3 * p3 * p3 + q2 * q2
    theta[0] = NAN
    _tolerances(p, q, ps, qs, &tol_p, &tol_q, &tol_d)
    if fabs(p) <= tol_p:
        return 0
    if fabs(delta[0]) <= tol_d:
        if p < 0.0:
            return 1
        return 0
    if delta[0] > 0.0:
        return 0
    m = sqrt(-p3)
    arg = -q2 / (m * m * m)
    if arg > 1.0:
        arg = 1.0
    elif arg < -1.0:
        arg = -1.0
    theta[0] = acos(arg)
    return 2


cdef inline void _solve_pq(double p, double q, double ps, double qs, Roots* out) nogil:
    cdef int e = _scale_exponent(p, q)
    if e == 0:
        _solve_unit(p, q, ps, qs, out)
        return
    _solve_unit(ldexp(p, -2 * e), ldexp(q, -3 * e), ldexp(ps, -2 * e), ldexp(qs, -3 * e), out)
    out.r0 = ldexp(out.r0, e)
    out.r1 = ldexp(out.r1, e)
    out.r2 = ldexp(out.r2, e)
    out.im = ldexp(out.im, e)
    out.delta = ldexp(out.delta, 6 * e)


cdef inline void _solve_unit(double p, double q, double ps, double qs, Roots* out) nogil:
    cdef double delta, theta, k, s, h, u, v, den, z
    cdef double tol_p, tol_q, tol_d
    cdef int branch = _classify_unit(p, q, ps, qs, &delta, &theta)
    out.delta = delta
    out.theta = theta
    out.re = NAN
    out.im = NAN
    out.r1 = NAN
    out.r2 = NAN
    if branch == 2:
        k = 2.0 * sqrt(-p / 3.0)
        out.kind = 3
        out.r2 = k * cos(theta / 3.0)
        out.r0 = k * cos((theta + 2.0 * M_PI) / 3.0)
        out.r1 = k * cos((theta + 4.0 * M_PI) / 3.0)
        return
    if branch == 1:
        out.kind = 2
        out.r0 = 3.0 * q / p
        out.r1 = -1.5 * q / p
        return
    _tolerances(p, q, ps, qs, &tol_p, &tol_q, &tol_d)
    if fabs(p) <= tol_p and fabs(q) <= tol_q:
        out.kind = 1
        out.r0 = 0.0
        return
    s = sqrt(delta) if delta > 0.0 else 0.0
    h = -0.5 * q
    u = _cbrt(h + copysign(s, h))
    v = -p / (3.0 * u) if u != 0.0 else 0.0
    den = u * u - u * v + v * v
    z = -q / den if den != 0.0 else u + v
    out.kind = 0
    out.r0 = z
    out.im = _HALF_SQRT3 * fabs(u - v)


cdef inline double _newton(double a, double b, double c, double d, double x,
                           double max_step) nogil:
    cdef double fx = ((a * x + b) * x + c) * x + d
    cdef double df, step, xn, fn
    cdef int i
    for i in range(_STEPS):
        if fx == 0.0:
            break
        df = (3.0 * a * x + 2.0 * b) * x + c
        if df == 0.0:
            break
        step = fx / df
        if not fabs(step) <= max_step:
            break
        xn = x - step
        fn = ((a * xn + b) * xn + c) * xn + d
        if not fabs(fn) < fabs(fx):
            break
        x = xn
        fx = fn
    return x


cdef inline double _newton_double(double a, double b, double c, double x,
                                  double max_step) nogil:
    cdef double gx = (3.0 * a * x + 2.0 * b) * x + c
    cdef double dg, step, xn, gn
    cdef int i
    for i in range(_STEPS):
        if gx == 0.0:
            break
        dg = 6.0 * a * x + 2.0 * b
        if dg == 0.0:
            break
        step = gx / dg
        if not fabs(step) <= max_step:
            break
        xn = x - step
        gn = (3.0 * a * xn + 2.0 * b) * xn + c
        if not fabs(gn) < fabs(gx):
            break
        x = xn
        gx = gn
    return x


cdef inline void _finish(double a, double b, double c, double d, double x0,
                         Roots* out) nogil:
    cdef double r0, r1, r2, g01, g12, s0, s1, s2, gap
    if out.kind == 3:
        r0 = out.r0 + x0
        r1 = out.r1 + x0
        r2 = out.r2 + x0
        g01 = 0.5 * (r1 - r0)
        g12 = 0.5 * (r2 - r1)
        s0 = _newton(a, b, c, d, r0, g01)
        s1 = _newton(a, b, c, d, r1, g01 if g01 < g12 else g12)
        s2 = _newton(a, b, c, d, r2, g12)
        if s0 < s1 and s1 < s2:
            r0 = s0
            r1 = s1
            r2 = s2
        out.r0 = r0
        out.r1 = r1
        out.r2 = r2
    elif out.kind == 2:
        r0 = out.r0 + x0
        r1 = out.r1 + x0
        gap = 0.5 * fabs(r1 - r0)
        out.r0 = _newton(a, b, c, d, r0, gap)
        out.r1 = _newton_double(a, b, c, r1, gap)
    elif out.kind == 1:
        out.r0 = x0
    else:
        out.r0 = _newton(a, b, c, d, out.r0 + x0, INFINITY)
        out.re = -0.5 * (b / a + out.r0)


cdef inline int _coefficient_exponent(double B, double C, double D) nogil:
    cdef double m = fabs(B)
    cdef double r = sqrt(fabs(C))
    cdef int k = 0
    if r > m:
        m = r
    r = c_cbrt(fabs(D))
    if r > m:
        m = r
    if m == 0.0 or (m > _SAFE_LO and m < _SAFE_HI):
        return 0
    frexp(m, &k)
    return k


cdef inline void _solve_cubic(double a, double b, double c, double d, Roots* out) nogil:
    cdef double B, C, D, BB, x0, p, q, ps, qs
    cdef int k
    if a < 0.0:
        a = -a
        b = -b
        c = -c
        d = -d
    B = b / a
    C = c / a
    D = d / a
    k = _coefficient_exponent(B, C, D)
    if k != 0:
        B = ldexp(B, -k)
        C = ldexp(C, -2 * k)
        D = ldexp(D, -3 * k)
        a = 1.0
        b = B
        c = C
        d = D
    x0 = -B / 3.0
    BB = B * B
    p = C - BB / 3.0
    q = D - B * C / 3.0 + 2.0 * BB * B / 27.0
    ps = fabs(C) + BB / 3.0
    qs = fabs(D) + fabs(B * C) / 3.0 + 2.0 * BB * fabs(B) / 27.0
    _solve_pq(p, q, ps, qs, out)
    out.p = p
    out.q = q
    _finish(a, b, c, d, x0, out)
    if k != 0:
        out.r0 = ldexp(out.r0, k)
        out.r1 = ldexp(out.r1, k)
        out.r2 = ldexp(out.r2, k)
        out.re = ldexp(out.re, k)
        out.im = ldexp(out.im, k)
        out.p = ldexp(out.p, 2 * k)
        out.q = ldexp(out.q, 3 * k)
        out.delta = ldexp(out.delta, 6 * k)


cdef tuple _as_tuple(Roots* r):
    return (r.kind, r.r0, r.r1, r.r2, r.re, r.im, r.p, r.q, r.delta, r.theta)


def cbrt(double t):
    """Real cube root, odd in ``t``."""
    return _cbrt(t)


def depress(double a, double b, double c, double d):
    cdef double B = b / a, C = c / a, D = d / a
    cdef double BB = B * B
    return (-B / 3.0, C - BB / 3.0, D - B * C / 3.0 + 2.0 * BB * B / 27.0,
            fabs(C) + BB / 3.0,
            fabs(D) + fabs(B * C) / 3.0 + 2.0 * BB * fabs(B) / 27.0)


def tolerances(double p, double q, double p_scale, double q_scale):
    cdef double tp, tq, td
    _tolerances(p, q, p_scale, q_scale, &tp, &tq, &td)
    return tp, tq, td


def classify_pq(double p, double q, double p_scale=0.0, double q_scale=0.0):
    cdef double delta, theta
    cdef int branch = _classify(p, q, p_scale, q_scale, &delta, &theta)
    return branch, delta, theta


def coefficient_exponent(double a, double b, double c, double d):
    return _coefficient_exponent(b / a, c / a, d / a)


def classify_cubic(double a, double b, double c, double d):
    cdef double delta, theta, x0, p, q, ps, qs
    cdef int branch, k
    if a < 0.0:
        a = -a
        b = -b
        c = -c
        d = -d
    k = _coefficient_exponent(b / a, c / a, d / a)
    if k != 0:
        b = ldexp(b / a, -k)
        c = ldexp(c / a, -2 * k)
        d = ldexp(d / a, -3 * k)
        a = 1.0
    x0, p, q, ps, qs = depress(a, b, c, d)
    branch = _classify(p, q, ps, qs, &delta, &theta)
    return branch, ldexp(delta, 6 * k), theta, ldexp(p, 2 * k), ldexp(q, 3 * k)


def solve_depressed(double p, double q):
    cdef Roots r
    _solve_pq(p, q, 0.0, 0.0, &r)
    r.p = p
    r.q = q
    _finish(1.0, 0.0, p, q, 0.0, &r)
    return _as_tuple(&r)


def solve_cubic(double a, double b, double c, double d):
    cdef Roots r
    _solve_cubic(a, b, c, d, &r)
    return _as_tuple(&r)


def solve_batch(a, b, c, d):
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    kinds_arr = np.empty(n, dtype=np.int8)
    roots_arr = np.empty((n, 3), dtype=np.float64)
    pairs_arr = np.empty((n, 2), dtype=np.float64)
    deltas_arr = np.empty(n, dtype=np.float64)
    cdef signed char[::1] kinds = kinds_arr
    cdef double[:, ::1] roots = roots_arr
    cdef double[:, ::1] pairs = pairs_arr
    cdef double[::1] deltas = deltas_arr
    cdef Roots r
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _solve_cubic(av[i], bv[i], cv[i], dv[i], &r)
            kinds[i] = <signed char> r.kind
            roots[i, 0] = r.r0
            roots[i, 1] = r.r1
            roots[i, 2] = r.r2
            pairs[i, 0] = r.re
            pairs[i, 1] = r.im
            deltas[i] = r.delta
    return kinds_arr, roots_arr, pairs_arr, deltas_arr
