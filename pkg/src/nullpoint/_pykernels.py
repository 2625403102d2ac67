"""Pure-Python kernels.

This module is the fallback used when the compiled ``_ckernels`` extension is
not available. ``_ckernels.pyx`` mirrors it operation for operation, so both
backends return the same floats (the parity tests hold them to a few ulps).

Airy evaluation
---------------
Values on ``[-10, 10]`` come from a Taylor re-expansion about the nearest node
of a 0.25-spaced table. The table itself is seeded from

* the Maclaurin series on ``[-4, 10]`` (Bi, Bi') and ``[-4, 2]`` (Ai, Ai'),
* the large-argument expansion at ``x = 10`` for Ai, Ai', continued backwards
  (the numerically stable direction for the recessive solution),
* forward continuation from ``x = -4`` into the oscillatory region.

Outside ``[-10, 10]`` the asymptotic expansions are used directly.
"""

import math

import numpy as np

SQRT3 = math.sqrt(3.0)
SQRT_PI = math.sqrt(math.pi)
INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Ai(0) = 3^(-2/3) / Gamma(2/3), Ai'(0) = -3^(-1/3) / Gamma(1/3), correctly rounded
AI0 = 0.3550280538878172
AIP0 = -0.2588194037928068

X_MAX = 80.0
NODE_LO = -10.0
NODE_STEP = 0.25
N_NODES = 81
ASYMPTOTIC_FROM = 10.0
MACLAURIN_LO = -4.0
AI_MACLAURIN_HI = 2.0

BACKEND = "python"


def _maclaurin(x):
    x3 = x * x * x
    f = 1.0
    g = x
    fp = 0.0
    gp = 1.0
    tf = 1.0
    tg = x
    tfp = 0.5 * x * x
    tgp = x3 / 3.0
    fp += tfp
    gp += tgp
    k = 1
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
        if (
            k > 2
            and abs(tf) <= 1e-17 * abs(f)
            and abs(tg) <= 1e-17 * abs(g)
            and abs(tfp) <= 1e-17 * abs(fp)
            and abs(tgp) <= 1e-17 * abs(gp)
        ):
            break
        k += 1
    c1 = AI0
    c2 = -AIP0
    ai = c1 * f - c2 * g
    aip = c1 * fp - c2 * gp
    bi = SQRT3 * (c1 * f + c2 * g)
    bip = SQRT3 * (c1 * fp + c2 * gp)
    return ai, aip, bi, bip


def _asymptotic(x):
    z = abs(x)
    zeta = 2.0 / 3.0 * z * math.sqrt(z)
    inv = 1.0 / zeta
    # partial sums: su/sv plain, au/av alternating, even/odd split for x < 0
    su = 1.0
    sv = 1.0
    au = 1.0
    av = 1.0
    pu = 1.0
    qu = 0.0
    pv = 1.0
    qv = 0.0
    u = 1.0
    powk = 1.0
    last = 1.0
    k = 1
    while k < 80:
        u = u * ((6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0)) / (
            (2.0 * k - 1.0) * 216.0 * k
        )
        v = -u * (6.0 * k + 1.0) / (6.0 * k - 1.0)
        powk = powk * inv
        tu = u * powk
        tv = v * powk
        mag = abs(tu) if abs(tu) > abs(tv) else abs(tv)
        if mag > last:
            break
        sign = -1.0 if k % 2 == 1 else 1.0
        su += tu
        sv += tv
        au += sign * tu
        av += sign * tv
        # (-1)^j u_{2j} / zeta^{2j} into p, (-1)^j u_{2j+1} / zeta^{2j+1} into q
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
    q4 = math.pow(z, 0.25)
    if x > 0.0:
        e = math.exp(-zeta)
        ai = e * au / (2.0 * SQRT_PI * q4)
        aip = -q4 * e * av / (2.0 * SQRT_PI)
        eb = math.exp(zeta)
        bi = eb * su / (SQRT_PI * q4)
        bip = q4 * eb * sv / SQRT_PI
        return ai, aip, bi, bip
    s = math.sin(zeta)
    c = math.cos(zeta)
    cph = (c + s) * INV_SQRT2
    sph = (s - c) * INV_SQRT2
    ai = (cph * pu + sph * qu) / (SQRT_PI * q4)
    bi = (-sph * pu + cph * qu) / (SQRT_PI * q4)
    aip = q4 * (sph * pv - cph * qv) / SQRT_PI
    bip = q4 * (cph * pv + sph * qv) / SQRT_PI
    return ai, aip, bi, bip


def _taylor(x0, y, yp, h):
    """Re-expand a solution of y'' = x y about ``x0`` and evaluate at ``x0 + h``."""
    if abs(h) < 1e-100:
        # higher orders vanish at double precision; also keeps yp * h from underflowing
        return y + yp * h, yp
    c2 = x0 * h * h
    c3 = h * h * h
    bm3 = 0.0
    bm2 = y
    bm1 = yp * h
    sy = bm2 + bm1
    sd = bm1
    n = 2
    while n < 80:
        bn = (c2 * bm2 + c3 * bm3) / (n * (n - 1.0))
        sy += bn
        sd += n * bn
        if (
            n > 4
            and abs(bn) <= 1e-17 * abs(sy)
            and abs(bm1) <= 1e-17 * abs(sy)
            and abs(n * bn) <= 1e-17 * abs(sd)
            and abs((n - 1.0) * bm1) <= 1e-17 * abs(sd)
        ):
            break
        bm3 = bm2
        bm2 = bm1
        bm1 = bn
        n += 1
    return sy, sd / h


def _build_table():
    ai = [0.0] * N_NODES
    aip = [0.0] * N_NODES
    bi = [0.0] * N_NODES
    bip = [0.0] * N_NODES
    for j in range(N_NODES):
        x = NODE_LO + NODE_STEP * j
        if x >= MACLAURIN_LO:
            a, ap, b, bp = _maclaurin(x)
            bi[j] = b
            bip[j] = bp
            if x <= AI_MACLAURIN_HI:
                ai[j] = a
                aip[j] = ap
    top = N_NODES - 1
    a, ap, _, _ = _asymptotic(NODE_LO + NODE_STEP * top)
    ai[top] = a
    aip[top] = ap
    j = top - 1
    while NODE_LO + NODE_STEP * j > AI_MACLAURIN_HI:
        x1 = NODE_LO + NODE_STEP * (j + 1)
        ai[j], aip[j] = _taylor(x1, ai[j + 1], aip[j + 1], -NODE_STEP)
        j -= 1
    j = int((MACLAURIN_LO - NODE_LO) / NODE_STEP) - 1
    while j >= 0:
        x1 = NODE_LO + NODE_STEP * (j + 1)
        ai[j], aip[j] = _taylor(x1, ai[j + 1], aip[j + 1], -NODE_STEP)
        bi[j], bip[j] = _taylor(x1, bi[j + 1], bip[j + 1], -NODE_STEP)
        j -= 1
    return ai, aip, bi, bip


_AI, _AIP, _BI, _BIP = _build_table()


def airy(x):
    """Return ``(Ai, Ai', Bi, Bi')`` at real ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"Airy argument must be finite, got {x!r}")
    if abs(x) > X_MAX:
        raise OverflowError(
            f"Bi({x:g}) would overflow double precision; |x| must be <= {X_MAX:g}"
        )
    if abs(x) > ASYMPTOTIC_FROM:
        return _asymptotic(x)
    j = int(math.floor((x - NODE_LO) / NODE_STEP + 0.5))
    x0 = NODE_LO + NODE_STEP * j
    h = x - x0
    ai, aip = _taylor(x0, _AI[j], _AIP[j], h)
    bi, bip = _taylor(x0, _BI[j], _BIP[j], h)
    return ai, aip, bi, bip


def airy_vec(xs):
    xs = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    out = np.empty((4, xs.size), dtype=np.float64)
    for i in range(xs.size):
        out[0, i], out[1, i], out[2, i], out[3, i] = airy(xs[i])
    return out


def trig_det(theta, c0, cs, cc):
    return c0 + cs * math.sin(theta) + cc * math.cos(theta)


def trig_det_vec(thetas, c0, cs, cc):
    thetas = np.ascontiguousarray(thetas, dtype=np.float64).ravel()
    out = np.empty(thetas.size, dtype=np.float64)
    for i in range(thetas.size):
        t = thetas[i]
        out[i] = c0 + cs * math.sin(t) + cc * math.cos(t)
    return out


def _bisect(c0, cs, cc, a, b, fa, fb, xtol, ftol):
    while True:
        m = a + 0.5 * (b - a)
        if m <= a or m >= b:
            break
        if b - a < xtol and min(abs(fa), abs(fb)) <= ftol:
            break
        fm = c0 + cs * math.sin(m) + cc * math.cos(m)
        if fm == 0.0:
            return m, fm
        if (fm < 0.0) == (fa < 0.0):
            a = m
            fa = fm
        else:
            b = m
            fb = fm
    if abs(fa) <= abs(fb):
        return a, fa
    return b, fb


def scan_trig(c0, cs, cc, lo, hi, step, xtol, ftol):
    """Bracket every sign change of ``c0 + cs sin t + cc cos t`` on a grid over
    ``[lo, hi]`` and bisect each bracket.

    Returns a list of ``(theta, value)`` pairs in increasing theta. Grid points
    where the function is exactly zero are reported as roots as they are.
    """
    n = int(math.ceil((hi - lo) / step))
    roots = []
    t_prev = lo
    f_prev = c0 + cs * math.sin(lo) + cc * math.cos(lo)
    if f_prev == 0.0:
        roots.append((t_prev, f_prev))
    for i in range(1, n + 1):
        t = lo + i * step
        if t > hi:
            t = hi
        f = c0 + cs * math.sin(t) + cc * math.cos(t)
        if f == 0.0:
            roots.append((t, f))
        elif f_prev != 0.0 and (f < 0.0) != (f_prev < 0.0):
            roots.append(_bisect(c0, cs, cc, t_prev, t, f_prev, f, xtol, ftol))
        t_prev = t
        f_prev = f
    return roots
