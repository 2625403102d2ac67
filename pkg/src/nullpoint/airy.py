"""Real-argument Airy functions Ai, Bi and their derivatives.

``airy_eval`` dispatches to the active kernel backend. ``airy_oracle`` is an
independent, slow, extended-precision integrator of y'' = x y started from the
Gamma-function values at the origin; it exists to certify ``airy_eval``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError

X_MAX = 80.0
ORACLE_X_MAX = 20.0


@dataclass(frozen=True)
class AiryQuad:
    """Ai, Bi, Ai', Bi' at a common argument (floats or equal-shape arrays)."""

    ai: float
    bi: float
    aip: float
    bip: float

    def wronskian(self):
        """Ai Bi' - Ai' Bi, identically 1/pi."""
        return self.ai * self.bip - self.aip * self.bi


def airy_eval(x: float) -> AiryQuad:
    """Evaluate Ai, Bi, Ai', Bi' at ``x``.

    Raises
    ------
    OverflowError
        If ``|x| > 80``, where Bi leaves double-precision range.
    ValueError
        If ``x`` is not finite.
    """
    ai, aip, bi, bip = _backend.kernels().airy(x)
    return AiryQuad(ai, bi, aip, bip)


def airy_eval_array(xs) -> AiryQuad:
    """Vectorised ``airy_eval``; fields are arrays shaped like ``xs``."""
    xs = np.asarray(xs, dtype=np.float64)
    out = _backend.kernels().airy_vec(xs.ravel())
    shape = xs.shape
    return AiryQuad(
        out[0].reshape(shape), out[2].reshape(shape),
        out[1].reshape(shape), out[3].reshape(shape),
    )


def airy_oracle(x: float, step: float = 0.125) -> AiryQuad:
    """Integrate y'' = x y from 0 to ``x`` in extended precision.

    Fixed steps of at most ``step`` are taken with a Taylor-series integrator
    whose order adapts to the working precision. The working precision grows
    with ``|x|`` so the recessive Ai survives forward integration on x > 0.
    """
    import mpmath

    x = float(x)
    if not abs(x) <= ORACLE_X_MAX:
        raise DomainError(f"airy_oracle supports |x| <= {ORACLE_X_MAX:g}, got {x!r}")
    if not step > 0.0:
        raise DomainError(f"step must be positive, got {step!r}")
    zeta = 2.0 / 3.0 * abs(x) ** 1.5
    growth = 2.0 * zeta if x > 0 else zeta
    dps = 30 + int(math.ceil(growth / math.log(10.0)))
    n = max(1, int(math.ceil(abs(x) / step)))
    with mpmath.workdps(dps):
        three = mpmath.mpf(3)
        ai = 1 / (three ** (mpmath.mpf(2) / 3) * mpmath.gamma(mpmath.mpf(2) / 3))
        aip = -1 / (three ** (mpmath.mpf(1) / 3) * mpmath.gamma(mpmath.mpf(1) / 3))
        bi = mpmath.sqrt(three) * ai
        bip = -mpmath.sqrt(three) * aip
        h = mpmath.mpf(x) / n
        eps = mpmath.mpf(10) ** (-(dps + 3))
        t0 = mpmath.mpf(0)
        for i in range(n):
            t0 = h * i
            ai, aip = _mp_taylor_step(t0, ai, aip, h, eps)
            bi, bip = _mp_taylor_step(t0, bi, bip, h, eps)
        return AiryQuad(float(ai), float(bi), float(aip), float(bip))


def _mp_taylor_step(x0, y, yp, h, eps):
    # coefficients of y about x0: a_n n (n-1) = x0 a_{n-2} + a_{n-3}
    a = [y, yp]
    sy = y + yp * h
    sd = yp
    hn = h
    n = 2
    while True:
        an = (x0 * a[n - 2] + (a[n - 3] if n >= 3 else 0)) / (n * (n - 1))
        a.append(an)
        hn_1 = hn
        hn = hn * h
        sy += an * hn
        sd += n * an * hn_1
        if n > 6 and all(abs(c) * abs(h) ** m < eps for c, m in ((a[-1], n), (a[-2], n - 1), (a[-3], n - 2))):
            break
        n += 1
    return sy, sd
