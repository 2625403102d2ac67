"""Boundary-condition determinants for the four barrier models.

Every closed-form determinant here is a trigonometric polynomial in the angle
theta = k a::

    det(theta) = c0 + cs * sin(theta) + cc * cos(theta)

with coefficients that depend only on the circuit. ``determinant_form``
returns those coefficients; the root scanner and the kernels work on them
directly. ``boundary_matrix`` / ``numeric_det`` build the literal 4x4 system
and serve as the independent check on the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .airy import AiryQuad, airy_eval
from .errors import DomainError
from .kinematics import (
    HBAR2_OVER_2M,
    CircuitSpec,
    Delta,
    Kinematics,
    Rectangular,
    ScaledRectangular,
    Triangular,
    kinematics,
    wavenumber,
)


@dataclass(frozen=True)
class DeterminantValue:
    value: float
    normalization: str
    scale: float = 1.0


@dataclass(frozen=True)
class TrigForm:
    """``c0 + cs sin(theta) + cc cos(theta)``.

    ``scale`` is the magnitude that determinant tolerances are measured
    against: 1 for the normalised rectangular and delta forms, and
    ``|c0| + |cs| + |cc|`` for the triangular form.
    """

    c0: float
    cs: float
    cc: float
    normalization: str
    scale: float = 1.0

    def __call__(self, theta: float) -> float:
        return _backend.kernels().trig_det(float(theta), self.c0, self.cs, self.cc)

    def evaluate(self, thetas) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=np.float64)
        out = _backend.kernels().trig_det_vec(thetas.ravel(), self.c0, self.cs, self.cc)
        return out.reshape(thetas.shape)

    def value(self, theta: float) -> DeterminantValue:
        return DeterminantValue(self(theta), self.normalization, self.scale)


RECT_NORMALIZATION = "Det / (2 k beta)"
TRI_NORMALIZATION = "rows 2 and 4 divided by k (dimensionless)"
DELTA_NORMALIZATION = "sin(theta) closure condition"
RAW_NORMALIZATION = "raw 4x4 determinant"


# ---------------------------------------------------------------------------
# rectangular
# ---------------------------------------------------------------------------


def _rect_form(k: float, beta: float, phi: float) -> TrigForm:
    if not beta > 0.0:
        raise DomainError("beta = 0 (E at the barrier top) leaves Det/(2 k beta) undefined")
    return TrigForm(
        2.0,
        (beta / k - k / beta) * math.sinh(phi),
        -2.0 * math.cosh(phi),
        RECT_NORMALIZATION,
    )


def det_rectangular(kin: Kinematics) -> DeterminantValue:
    """Determinant of the rectangular-barrier circuit divided by 2 k beta:

    (beta/k - k/beta) sinh(Phi) sin(Theta) + 2 [1 - cosh(Phi) cos(Theta)]
    """
    if kin.beta is None:
        raise DomainError("det_rectangular needs rectangular kinematics")
    return _rect_form(kin.k, kin.beta, kin.phi).value(kin.theta)


def det_scaled_rectangular(
    E: float, V0: float, b: float, xi_scale: float, theta: float
) -> DeterminantValue:
    """Rectangular determinant for a barrier of height ``xi_scale*V0`` and
    length ``b/xi_scale`` (same 2 k beta' normalisation)."""
    if not E < xi_scale * V0:
        raise DomainError(f"need E < xi_scale*V0 (E={E}, xi_scale*V0={xi_scale * V0})")
    k = wavenumber(E)
    beta = math.sqrt((xi_scale * V0 - E) / HBAR2_OVER_2M)
    return _rect_form(k, beta, beta * b / xi_scale).value(theta)


def scaled_limit_theta(E: float, V0: float, b: float, period: int = 0) -> float:
    """Root of the large-``xi_scale`` closure condition

        m V0 b / (hbar^2 k) = (cos(Theta) - 1) / sin(Theta)

    on its physical branch. The right-hand side equals -tan(Theta/2), so the
    solution in (-pi, 0) is ``-2 atan(L)``; ``period`` n shifts it by -2 pi n.
    """
    for name, v in (("E", E), ("V0", V0), ("b", b)):
        if not v > 0.0:
            raise DomainError(f"{name} must be positive, got {v!r}")
    if period < 0:
        raise DomainError("period must be >= 0")
    lhs = V0 * b / (2.0 * HBAR2_OVER_2M * wavenumber(E))
    return -2.0 * math.atan(lhs) - 2.0 * math.pi * period


# ---------------------------------------------------------------------------
# triangular
# ---------------------------------------------------------------------------


def triangular_form(R: float, qK: AiryQuad, qX: AiryQuad) -> TrigForm:
    """Coefficients of the factored triangular determinant for Airy values
    ``qK`` at the barrier entrance and ``qX`` at its far end."""
    aK, bK, apK, bpK = qK.ai, qK.bi, qK.aip, qK.bip
    aX, bX, apX, bpX = qX.ai, qX.bi, qX.aip, qX.bip
    t_sin2 = R * R * (apK * bpX - apX * bpK)
    t_x = R * (apX * bX - aX * bpX)
    t_k = R * (apK * bK - aK * bpK)
    t_cos1 = R * (aX * bpK - apX * bK)
    t_cos2 = R * (aK * bpX - apK * bX)
    t_sin1 = aK * bX - aX * bK
    c0 = t_x + t_k
    cs = t_sin2 + t_sin1
    cc = t_cos1 + t_cos2
    scale = (
        abs(t_sin2) + abs(t_x) + abs(t_k) + abs(t_cos1) + abs(t_cos2) + abs(t_sin1)
    )
    return TrigForm(c0, cs, cc, TRI_NORMALIZATION, scale)


def det_triangular(kin: Kinematics, airy=airy_eval) -> DeterminantValue:
    """Six-term factored triangular determinant at ``kin.theta``.

    ``airy`` is the Ai/Bi source (``airy_eval`` unless a test substitutes
    another implementation).
    """
    if kin.gamma is None:
        raise DomainError("det_triangular needs triangular kinematics")
    if not kin.K <= 0.0 <= kin.X:
        raise DomainError(f"need K <= 0 <= X (K={kin.K}, X={kin.X})")
    return triangular_form(kin.R, airy(kin.K), airy(kin.X)).value(kin.theta)


def det_shorted_triangular(K: float, X: float, R: float = 1.0) -> DeterminantValue:
    """Triangular determinant with the pre-barrier removed (theta = 0):

    R {[Ai(X) - Ai(K)][Bi'(K) - Bi'(X)] + [Bi(X) - Bi(K)][Ai'(X) - Ai'(K)]}
    """
    if not K <= 0.0 <= X:
        raise DomainError(f"need K <= 0 <= X (K={K}, X={X})")
    qK = airy_eval(K)
    qX = airy_eval(X)
    val = R * (
        (qX.ai - qK.ai) * (qK.bip - qX.bip) + (qX.bi - qK.bi) * (qX.aip - qK.aip)
    )
    return DeterminantValue(val, TRI_NORMALIZATION)


def shorted_triangular_grid(K, X, R: float = 1.0) -> np.ndarray:
    """``det_shorted_triangular`` on the outer product of ``K`` and ``X``."""
    K = np.asarray(K, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    if np.any(K > 0.0) or np.any(X < 0.0):
        raise DomainError("need K <= 0 <= X")
    kern = _backend.kernels()
    qK = kern.airy_vec(K)
    qX = kern.airy_vec(X)
    aK, apK, bK, bpK = (q[:, None] for q in qK)
    aX, apX, bX, bpX = (q[None, :] for q in qX)
    return R * ((aX - aK) * (bpK - bpX) + (bX - bK) * (apX - apK))


# ---------------------------------------------------------------------------
# delta
# ---------------------------------------------------------------------------

DELTA_FORM = TrigForm(0.0, 1.0, 0.0, DELTA_NORMALIZATION)


def delta_consistency(theta: float) -> DeterminantValue:
    """sin(theta): the delta-barrier loop closes only where this vanishes.

    The barrier strength does not appear; only endpoint matching with B = D
    is imposed at the junction.
    """
    return DELTA_FORM.value(theta)


# ---------------------------------------------------------------------------
# dispatch and the literal 4x4 system
# ---------------------------------------------------------------------------


def determinant_form(spec: CircuitSpec, airy=airy_eval) -> TrigForm:
    """Theta-independent coefficients of the closed-form determinant."""
    m = spec.model
    if isinstance(m, Delta):
        return DELTA_FORM
    kin = kinematics(spec, 0.0)
    if isinstance(m, (Rectangular, ScaledRectangular)):
        return _rect_form(kin.k, kin.beta, kin.phi)
    if isinstance(m, Triangular):
        return triangular_form(kin.R, airy(kin.K), airy(kin.X))
    raise TypeError(f"unsupported barrier model {m!r}")


def evaluate(spec: CircuitSpec, theta: float) -> DeterminantValue:
    return determinant_form(spec).value(theta)


def boundary_matrix(spec: CircuitSpec, kin: Kinematics, airy=airy_eval) -> np.ndarray:
    """The 4x4 boundary-condition matrix acting on (A, B, C, D).

    Rectangular models use the unscaled rows (derivative rows carry k and
    beta); the triangular rows are divided by k; the delta rows match the
    wave and its slope at the origin and around the loop.
    """
    m = spec.model
    t = kin.theta
    s = math.sin(t)
    c = math.cos(t)
    if isinstance(m, (Rectangular, ScaledRectangular)):
        k, beta, phi = kin.k, kin.beta, kin.phi
        ep = math.exp(phi)
        em = math.exp(-phi)
        return np.array(
            [
                [1.0, 0.0, -1.0, -1.0],
                [0.0, k, -beta, beta],
                [c, s, -ep, -em],
                [k * s, -k * c, beta * ep, -beta * em],
            ]
        )
    if isinstance(m, Triangular):
        R = kin.R
        qK = airy(kin.K)
        qX = airy(kin.X)
        return np.array(
            [
                [1.0, 0.0, -qK.ai, -qK.bi],
                [0.0, 1.0, -R * qK.aip, -R * qK.bip],
                [c, s, -qX.ai, -qX.bi],
                [s, -c, R * qX.aip, R * qX.bip],
            ]
        )
    if isinstance(m, Delta):
        # psi_I on [a, 0], psi_II on [0, |a|]; theta = k a < 0
        return np.array(
            [
                [1.0, 0.0, -1.0, 0.0],
                [0.0, 1.0, 0.0, -1.0],
                [c, s, -c, s],
                [-s, c, -s, -c],
            ]
        )
    raise TypeError(f"unsupported barrier model {m!r}")


def numeric_det(spec: CircuitSpec, kin: Kinematics, airy=airy_eval) -> DeterminantValue:
    """Determinant of ``boundary_matrix`` by LU factorisation with partial
    pivoting. For the rectangular models divide by 2 k beta to compare with
    ``det_rectangular``; for the delta model it equals 4 sin^2(theta)."""
    M = boundary_matrix(spec, kin, airy)
    with np.errstate(divide="ignore", invalid="ignore"):  # exactly singular M gives 0
        d = float(np.linalg.det(M))
    return DeterminantValue(d, RAW_NORMALIZATION, float(np.abs(M).max()))


def matrix_condition(M: np.ndarray) -> float:
    """sigma_min / sigma_max of ``M`` (0 for an exactly singular matrix)."""
    sv = np.linalg.svd(M, compute_uv=False)
    return float(sv[-1] / sv[0])
