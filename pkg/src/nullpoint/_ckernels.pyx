# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_pykernels`` operation for operation."""

from libc.math cimport sqrt, exp, sin, cos, pow, floor, fabs, isfinite, ceil, M_PI

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef double SQRT3 = sqrt(3.0)
cdef double SQRT_PI = sqrt(M_PI)
cdef double INV_SQRT2 = 1.0 / sqrt(2.0)
cdef double AI0 = 0.3550280538878172
cdef double AIP0 = -0.2588194037928068

cdef enum:
    N_NODES = 81
cdef double X_MAX = 80.0
cdef double NODE_LO = -10.0
cdef double NODE_STEP = 0.25
cdef double ASYMPTOTIC_FROM = 10.0
cdef double MACLAURIN_LO = -4.0
cdef double AI_MACLAURIN_HI = 2.0

BACKEND = "compiled"

cdef double _AI[N_NODES]
cdef double _AIP[N_NODES]
cdef double _BI[N_NODES]
cdef double _BIP[N_NODES]


cdef void _maclaurin(double x, double *out) noexcept nogil:
    cdef double x3 = x * x * x
    cdef double f = 1.0, g = x, fp = 0.0, gp = 1.0
    cdef double tf = 1.0, tg = x
    cdef double tfp = 0.5 * x * x
    cdef double tgp = x3 / 3.0
    cdef int k = 1
    fp += tfp
    gp += tgp
    while k < 500:
        tf = tf * x3 / ((3.0 * k - 1.0) * (3.0 * k))
        tg = tg * x3 / ((3.0 * k) * (3.0 * k + 1.0))
        f += tf
        g += tg
        if k > 1:
            tfp = tfp * x3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0))
            tgp = tgp * x3 / ((3.0 * k - 2.0) * (3.0 * k))
            fp += tfp
            gp += tgp
        if (k > 2 and fabs(tf) <= 1e-17 * fabs(f) and fabs(tg) <= 1e-17 * fabs(g)
                and fabs(tfp) <= 1e-17 * fabs(fp) and fabs(tgp) <= 1e-17 * fabs(gp)):
            break
        k += 1
    cdef double c1 = AI0
    cdef double c2 = -AIP0
    out[0] = c1 * f - c2 * g
    out[1] = c1 * fp - c2 * gp
    out[2] = SQRT3 * (c1 * f + c2 * g)
    out[3] = SQRT3 * (c1 * fp + c2 * gp)


cdef void _asymptotic(double x, double *out) noexcept nogil:
    cdef double z = fabs(x)
    cdef double zeta = 2.0 / 3.0 * z * sqrt(z)
    cdef double inv = 1.0 / zeta
    cdef double su = 1.0, sv = 1.0, au = 1.0, av = 1.0
    cdef double pu = 1.0, qu = 0.0, pv = 1.0, qv = 0.0
    cdef double u = 1.0, v, powk = 1.0, last = 1.0
    cdef double tu, tv, mag, sign, sj
    cdef int k = 1, j
    while k < 80:
        u = u * ((6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0)) / (
            (2.0 * k - 1.0) * 216.0 * k)
        v = -u * (6.0 * k + 1.0) / (6.0 * k - 1.0)
        powk = powk * inv
        tu = u * powk
        tv = v * powk
        mag = fabs(tu) if fabs(tu) > fabs(tv) else fabs(tv)
        if mag > last:
            break
        sign = -1.0 if k % 2 == 1 else 1.0
        su += tu
        sv += tv
        au += sign * tu
        av += sign * tv
        j = k // 2
        sj = -1.0 if j % 2 == 1 else 1.0
        if k % 2 == 0:
            pu += sj * tu
            pv += sj * tv
        else:
            qu += sj * tu
            qv += sj * tv
        last = mag
        if mag <= 1e-17:
            break
        k += 1
    cdef double q4 = pow(z, 0.25)
    cdef double e, eb, s, c, cph, sph
    if x > 0.0:
        e = exp(-zeta)
        out[0] = e * au / (2.0 * SQRT_PI * q4)
        out[1] = -q4 * e * av / (2.0 * SQRT_PI)
        eb = exp(zeta)
        out[2] = eb * su / (SQRT_PI * q4)
        out[3] = q4 * eb * sv / SQRT_PI
        return
    s = sin(zeta)
    c = cos(zeta)
    cph = (c + s) * INV_SQRT2
    sph = (s - c) * INV_SQRT2
    out[0] = (cph * pu + sph * qu) / (SQRT_PI * q4)
    out[2] = (-sph * pu + cph * qu) / (SQRT_PI * q4)
    out[1] = q4 * (sph * pv - cph * qv) / SQRT_PI
    out[3] = q4 * (cph * pv + sph * qv) / SQRT_PI


cdef void _taylor(double x0, double y, double yp, double h, double *out) noexcept nogil:
    if fabs(h) < 1e-100:
        out[0] = y + yp * h
        out[1] = yp
        return
    cdef double c2 = x0 * h * h
    cdef double c3 = h * h * h
    cdef double bm3 = 0.0, bm2 = y, bm1 = yp * h
    cdef double sy = bm2 + bm1
    cdef double sd = bm1
    cdef double bn
    cdef int n = 2
    while n < 80:
        bn = (c2 * bm2 + c3 * bm3) / (n * (n - 1.0))
        sy += bn
        sd += n * bn
        if (n > 4 and fabs(bn) <= 1e-17 * fabs(sy) and fabs(bm1) <= 1e-17 * fabs(sy)
                and fabs(n * bn) <= 1e-17 * fabs(sd)
                and fabs((n - 1.0) * bm1) <= 1e-17 * fabs(sd)):
            break
        bm3 = bm2
        bm2 = bm1
        bm1 = bn
        n += 1
    out[0] = sy
    out[1] = sd / h


cdef void _build_table() noexcept nogil:
    cdef double buf[4]
    cdef double tb[2]
    cdef int j, top
    cdef double x, x1
    for j in range(N_NODES):
        x = NODE_LO + NODE_STEP * j
        _AI[j] = 0.0
        _AIP[j] = 0.0
        _BI[j] = 0.0
        _BIP[j] = 0.0
        if x >= MACLAURIN_LO:
            _maclaurin(x, buf)
            _BI[j] = buf[2]
            _BIP[j] = buf[3]
            if x <= AI_MACLAURIN_HI:
                _AI[j] = buf[0]
                _AIP[j] = buf[1]
    top = N_NODES - 1
    _asymptotic(NODE_LO + NODE_STEP * top, buf)
    _AI[top] = buf[0]
    _AIP[top] = buf[1]
    j = top - 1
    while NODE_LO + NODE_STEP * j > AI_MACLAURIN_HI:
        x1 = NODE_LO + NODE_STEP * (j + 1)
        _taylor(x1, _AI[j + 1], _AIP[j + 1], -NODE_STEP, tb)
        _AI[j] = tb[0]
        _AIP[j] = tb[1]
        j -= 1
    j = <int>((MACLAURIN_LO - NODE_LO) / NODE_STEP) - 1
    while j >= 0:
        x1 = NODE_LO + NODE_STEP * (j + 1)
        _taylor(x1, _AI[j + 1], _AIP[j + 1], -NODE_STEP, tb)
        _AI[j] = tb[0]
        _AIP[j] = tb[1]
        _taylor(x1, _BI[j + 1], _BIP[j + 1], -NODE_STEP, tb)
        _BI[j] = tb[0]
        _BIP[j] = tb[1]
        j -= 1


_build_table()


cdef int _airy(double x, double *out) noexcept nogil:
    """Fill ``out`` with (Ai, Ai', Bi, Bi'); return 1 for non-finite, 2 for overflow."""
    cdef double tb[2]
    cdef int j
    cdef double x0, h
    if not isfinite(x):
        return 1
    if fabs(x) > X_MAX:
        return 2
    if fabs(x) > ASYMPTOTIC_FROM:
        _asymptotic(x, out)
        return 0
    j = <int>floor((x - NODE_LO) / NODE_STEP + 0.5)
    x0 = NODE_LO + NODE_STEP * j
    h = x - x0
    _taylor(x0, _AI[j], _AIP[j], h, tb)
    out[0] = tb[0]
    out[1] = tb[1]
    _taylor(x0, _BI[j], _BIP[j], h, tb)
    out[2] = tb[0]
    out[3] = tb[1]
    return 0


cdef _raise_airy(int status, double x):
    if status == 1:
        raise ValueError(f"Airy argument must be finite, got {x!r}")
    raise OverflowError(
        f"Bi({x:g}) would overflow double precision; |x| must be <= {X_MAX:g}")


def airy(x):
    """Return ``(Ai, Ai', Bi, Bi')`` at real ``x``."""
    cdef double xd = float(x)
    cdef double out[4]
    cdef int status = _airy(xd, out)
    if status:
        _raise_airy(status, xd)
    return out[0], out[1], out[2], out[3]


def airy_vec(xs):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(
        xs, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] res = np.empty((4, n), dtype=np.float64)
    cdef double out[4]
    cdef Py_ssize_t i
    cdef int status
    for i in range(n):
        status = _airy(xa[i], out)
        if status:
            _raise_airy(status, xa[i])
        res[0, i] = out[0]
        res[1, i] = out[1]
        res[2, i] = out[2]
        res[3, i] = out[3]
    return res


def trig_det(double theta, double c0, double cs, double cc):
    return c0 + cs * sin(theta) + cc * cos(theta)


def trig_det_vec(thetas, double c0, double cs, double cc):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ta = np.ascontiguousarray(
        thetas, dtype=np.float64).ravel()
    cdef Py_ssize_t n = ta.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double t
    for i in range(n):
        t = ta[i]
        res[i] = c0 + cs * sin(t) + cc * cos(t)
    return res


cdef void _bisect(double c0, double cs, double cc, double a, double b, double fa,
                  double fb, double xtol, double ftol, double *out) noexcept nogil:
    cdef double m, fm
    while True:
        m = a + 0.5 * (b - a)
        if m <= a or m >= b:
            break
        if b - a < xtol and (fabs(fa) if fabs(fa) < fabs(fb) else fabs(fb)) <= ftol:
            break
        fm = c0 + cs * sin(m) + cc * cos(m)
        if fm == 0.0:
            out[0] = m
            out[1] = fm
            return
        if (fm < 0.0) == (fa < 0.0):
            a = m
            fa = fm
        else:
            b = m
            fb = fm
    if fabs(fa) <= fabs(fb):
        out[0] = a
        out[1] = fa
    else:
        out[0] = b
        out[1] = fb


def scan_trig(double c0, double cs, double cc, double lo, double hi, double step,
              double xtol, double ftol):
    """Bracket every sign change of ``c0 + cs sin t + cc cos t`` on a grid over
    ``[lo, hi]`` and bisect each bracket."""
    cdef long n = <long>ceil((hi - lo) / step)
    cdef long i
    cdef double t, f, t_prev, f_prev
    cdef double out[2]
    roots = []
    t_prev = lo
    f_prev = c0 + cs * sin(lo) + cc * cos(lo)
    if f_prev == 0.0:
        roots.append((t_prev, f_prev))
    for i in range(1, n + 1):
        t = lo + i * step
        if t > hi:
            t = hi
        f = c0 + cs * sin(t) + cc * cos(t)
        if f == 0.0:
            roots.append((t, f))
        elif f_prev != 0.0 and (f < 0.0) != (f_prev < 0.0):
            _bisect(c0, cs, cc, t_prev, t, f_prev, f, xtol, ftol, out)
            roots.append((out[0], out[1]))
        t_prev = t
        f_prev = f
    return roots
