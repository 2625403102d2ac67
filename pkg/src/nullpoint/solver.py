"""Locate determinant zeros in theta and recover the standing wavefunction.

The search follows the iteration the models are built around: fix E, the
barrier and its size, then vary theta = k a (a < 0) until the determinant
vanishes. Here theta is scanned on a uniform grid, every sign change is
bracketed, and each bracket is bisected down to floating-point resolution.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .airy import airy_eval, airy_eval_array
from .determinants import boundary_matrix, determinant_form, matrix_condition
from .errors import DegenerateRootError, DomainError, NoRootError
from .kinematics import (
    CircuitSpec,
    Delta,
    Kinematics,
    Rectangular,
    ScaledRectangular,
    Triangular,
    kinematics,
)

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (-4.0 * math.pi - 1.0, 0.0)
DEFAULT_GRID_STEP = 1e-3
DET_TOLERANCE = 1e-10
# 0 bisects until the bracket is two adjacent doubles (well under 1e-12 rad)
THETA_XTOL = 0.0
RESIDUAL_TOLERANCE = 1e-8
COS_GUARD = 1e-6


@dataclass(frozen=True)
class RootSolution:
    theta: float
    pre_barrier_length: float
    det_residual: float
    det_scale: float
    matrix_condition: float
    branch_index: int
    k: float

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)

    @property
    def converged(self) -> bool:
        return abs(self.det_residual) <= DET_TOLERANCE * self.det_scale


def _check_window(window) -> tuple[float, float]:
    lo, hi = (float(w) for w in window)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"theta window must be finite, got {window!r}")
    if not lo < hi:
        raise DomainError(f"empty theta window {window!r}")
    if hi > 0.0:
        raise DomainError(f"theta window must lie in theta <= 0 (a < 0), got {window!r}")
    return lo, hi


def scan_roots(
    spec: CircuitSpec,
    window=DEFAULT_WINDOW,
    grid_step: float = DEFAULT_GRID_STEP,
    det_tolerance: float = DET_TOLERANCE,
    xtol: float = THETA_XTOL,
) -> list[RootSolution]:
    """All sign-changing zeros of the circuit determinant in ``window``.

    Roots come back sorted by |theta| (nearest zero first) with
    ``branch_index`` set accordingly. theta = 0 (zero-length pre-barrier) is
    never reported. Zeros where the determinant only touches the axis are not
    guaranteed to be found.
    """
    lo, hi = _check_window(window)
    if not (grid_step > 0.0 and math.isfinite(grid_step)):
        raise DomainError(f"grid_step must be positive, got {grid_step!r}")
    form = determinant_form(spec)
    raw = _backend.kernels().scan_trig(
        form.c0, form.cs, form.cc, lo, hi, grid_step, xtol, det_tolerance * form.scale
    )
    raw = [(t, f) for t, f in raw if t != 0.0]
    raw.sort(key=lambda r: (abs(r[0]), r[0]))
    base = kinematics(spec, 0.0)
    out = []
    for i, (theta, value) in enumerate(raw):
        kin = base.at(theta)
        cond = matrix_condition(boundary_matrix(spec, kin))
        if abs(value) > det_tolerance * form.scale:
            logger.warning(
                "root at theta=%r has |det|=%.3g above tolerance %.3g",
                theta, abs(value), det_tolerance * form.scale,
            )
        out.append(
            RootSolution(
                theta=theta,
                pre_barrier_length=abs(theta) / base.k,
                det_residual=value,
                det_scale=form.scale,
                matrix_condition=cond,
                branch_index=i,
                k=base.k,
            )
        )
    return out


def solve_for_length(
    spec: CircuitSpec,
    branch_index: int = 0,
    window=DEFAULT_WINDOW,
    grid_step: float = DEFAULT_GRID_STEP,
    det_tolerance: float = DET_TOLERANCE,
) -> RootSolution:
    """The ``branch_index``-th root (by |theta|), i.e. a pre-barrier length
    |a| = |theta| / k that closes the circuit."""
    if branch_index < 0:
        raise DomainError("branch_index must be >= 0")
    roots = scan_roots(spec, window, grid_step, det_tolerance)
    if branch_index >= len(roots):
        raise NoRootError(
            f"branch {branch_index} not found in theta window {tuple(window)!r} "
            f"({len(roots)} root(s) present)"
        )
    return roots[branch_index]


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientSet:
    """Wavefunction coefficients with A = 1 and the residuals of the four
    boundary equations (derivative rows divided by k)."""

    A: float
    B: float
    C: float
    D: float
    boundary_residuals: tuple[float, float, float, float]
    method: str = "null-vector"

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.boundary_residuals)

    @property
    def accepted(self) -> bool:
        return self.max_residual <= RESIDUAL_TOLERANCE

    def as_vector(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C, self.D])


def normalized_matrix(spec: CircuitSpec, kin: Kinematics) -> np.ndarray:
    """``boundary_matrix`` with the rectangular derivative rows divided by k."""
    M = boundary_matrix(spec, kin)
    if isinstance(spec.model, (Rectangular, ScaledRectangular)):
        M[1] /= kin.k
        M[3] /= kin.k
    return M


def boundary_residuals(spec: CircuitSpec, kin: Kinematics, coeffs) -> tuple[float, ...]:
    r = normalized_matrix(spec, kin) @ np.asarray(coeffs, dtype=np.float64)
    return tuple(float(v) for v in r)


def _finish(spec, kin, A, B, C, D, method) -> CoefficientSet:
    res = boundary_residuals(spec, kin, (A, B, C, D))
    cs = CoefficientSet(A, B, C, D, res, method)
    if not cs.accepted:
        logger.warning(
            "boundary residual %.3g exceeds %.0e at theta=%r (%s)",
            cs.max_residual, RESIDUAL_TOLERANCE, kin.theta, method,
        )
    return cs


def recover_coefficients_rectangular(spec: CircuitSpec, kin: Kinematics) -> CoefficientSet:
    """Null vector of the rectangular system with A = 1.

    With A = 1 the origin conditions give C + D = 1 and B = (beta/k)(C - D),
    leaving one unknown s = C - D. The derivative condition at the closure
    point fixes s; the value condition there is left over and its residual
    certifies the root.
    """
    r = kin.beta / kin.k
    t, phi = kin.theta, kin.phi
    # cosh(phi) - cos(t) without cancellation when both are close to 1
    den = 2.0 * r * (math.sinh(0.5 * phi) ** 2 + math.sin(0.5 * t) ** 2)
    if den == 0.0:
        raise DegenerateRootError("cosh(Phi) = cos(Theta): degenerate closure (Phi = 0)")
    s = -(math.sin(t) + r * math.sinh(phi)) / den
    C = 0.5 * (1.0 + s)
    D = 0.5 * (1.0 - s)
    return _finish(spec, kin, 1.0, r * s, C, D, "null-vector")


def closed_form_coefficients_rectangular(spec: CircuitSpec, kin: Kinematics) -> CoefficientSet:
    """Closed-form coefficients C = (1 + k/beta)/2, D = (1 - k/beta)/2 with B
    from the closure-derivative equation (or the closure-value equation when
    |cos(Theta)| < 1e-6).

    These expressions tacitly assume B = 1 in the origin-derivative condition
    and so do not in general satisfy all four boundary equations; the
    residuals are reported, not hidden.
    """
    q = kin.k / kin.beta
    t, phi = kin.theta, kin.phi
    C = 0.5 * (1.0 + q)
    D = 0.5 * (1.0 - q)
    ct = math.cos(t)
    if abs(ct) >= COS_GUARD:
        f = kin.beta / (2.0 * kin.k * ct)
        B = f * (1.0 + q) * math.exp(phi) - f * (1.0 - q) * math.exp(-phi) + math.tan(t)
        method = "closed-form (closure derivative)"
    else:
        B = (C * math.exp(phi) + D * math.exp(-phi) - ct) / math.sin(t)
        method = "closed-form (closure value)"
    res = boundary_residuals(spec, kin, (1.0, B, C, D))
    return CoefficientSet(1.0, B, C, D, res, method)


def recover_coefficients_triangular(spec: CircuitSpec, kin: Kinematics) -> CoefficientSet:
    """A = 1; eliminate B with the origin-derivative row, then solve the
    origin-value and closure-value rows for C and D. The closure-derivative
    row is the certificate."""
    qK = airy_eval(kin.K)
    qX = airy_eval(kin.X)
    R = kin.R
    s, c = math.sin(kin.theta), math.cos(kin.theta)
    m11, m12 = qK.ai, qK.bi
    m21 = R * s * qK.aip - qX.ai
    m22 = R * s * qK.bip - qX.bi
    det2 = m11 * m22 - m12 * m21
    size = max(abs(m11), abs(m12)) * max(abs(m21), abs(m22))
    if size == 0.0 or abs(det2) <= 1e-13 * size:
        raise DegenerateRootError(
            f"singular 2x2 reduction at K={kin.K}, X={kin.X}, theta={kin.theta}"
        )
    C = (1.0 * m22 - m12 * (-c)) / det2
    D = (m11 * (-c) - m21 * 1.0) / det2
    B = R * (qK.aip * C + qK.bip * D)
    return _finish(spec, kin, 1.0, B, C, D, "2x2 value rows")


def recover_coefficients_delta(spec: CircuitSpec, kin: Kinematics) -> CoefficientSet:
    """A = C = 1, B = D = 0: the cos(kx) standing wave around the loop."""
    return _finish(spec, kin, 1.0, 0.0, 1.0, 0.0, "B = D = 0")


def recover_coefficients(spec: CircuitSpec, theta: float) -> CoefficientSet:
    kin = kinematics(spec, theta)
    m = spec.model
    if isinstance(m, (Rectangular, ScaledRectangular)):
        return recover_coefficients_rectangular(spec, kin)
    if isinstance(m, Triangular):
        return recover_coefficients_triangular(spec, kin)
    if isinstance(m, Delta):
        return recover_coefficients_delta(spec, kin)
    raise TypeError(f"unsupported barrier model {m!r}")


# ---------------------------------------------------------------------------
# wavefunction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WavefunctionTrace:
    """Samples of psi around the loop: region I from x = a up to 0, then
    region II from 0 to the far end of the barrier (or to |a| for the delta
    model). x = 0 appears once in each region."""

    x: np.ndarray
    psi: np.ndarray
    region: np.ndarray
    origin_residual: float
    closure_residual: float
    normalized: bool = False
    norm: float = field(default=1.0)


def _trapezoid(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x)))


def trace_wavefunction(
    spec: CircuitSpec,
    coeffs: CoefficientSet,
    kin: Kinematics,
    n_samples: int = 200,
    normalize: bool = False,
) -> WavefunctionTrace:
    """Sample psi with ``n_samples`` points in each region."""
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    A, B, C, D = coeffs.A, coeffs.B, coeffs.C, coeffs.D
    k = kin.k
    a = kin.theta / k
    x1 = np.linspace(a, 0.0, n_samples)
    psi1 = A * np.cos(k * x1) + B * np.sin(k * x1)
    m = spec.model
    if isinstance(m, (Rectangular, ScaledRectangular)):
        end = m.b if isinstance(m, Rectangular) else m.b / m.xi_scale
        x2 = np.linspace(0.0, end, n_samples)
        psi2 = C * np.exp(kin.beta * x2) + D * np.exp(-kin.beta * x2)
    elif isinstance(m, Triangular):
        x2 = np.linspace(0.0, m.c, n_samples)
        # endpoints evaluated at K and X exactly, as in the boundary rows
        args = kin.K + kin.gamma * x2
        args[-1] = kin.X
        q = airy_eval_array(args)
        psi2 = C * q.ai + D * q.bi
    elif isinstance(m, Delta):
        x2 = np.linspace(0.0, -a, n_samples)
        psi2 = C * np.cos(k * x2) + D * np.sin(k * x2)
    else:
        raise TypeError(f"unsupported barrier model {m!r}")
    # the closure point in region I is evaluated through theta itself
    psi1[0] = A * math.cos(kin.theta) + B * math.sin(kin.theta)
    if isinstance(m, Delta):
        psi2[-1] = C * math.cos(kin.theta) - D * math.sin(kin.theta)
    x = np.concatenate([x1, x2])
    psi = np.concatenate([psi1, psi2])
    region = np.concatenate([np.full(n_samples, 1), np.full(n_samples, 2)])
    origin = float(abs(psi1[-1] - psi2[0]))
    closure = float(abs(psi1[0] - psi2[-1]))
    norm = 1.0
    if normalize:
        norm = math.sqrt(_trapezoid(x1, psi1**2) + _trapezoid(x2, psi2**2))
        psi = psi / norm
    return WavefunctionTrace(x, psi, region, origin, closure, normalize, norm)
