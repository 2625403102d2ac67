"""Unit system, circuit description and derived kinematic parameters.

Energies are in eV, lengths in nm, angles in radians. With these units the
only physical constant the models need is ``hbar**2 / (2 m_e)``, expressed
in eV nm^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Union

from .errors import DomainError

# CODATA 2018 (hbar and e are exact by SI definition)
HBAR_J_S = 1.054571817e-34
ELECTRON_MASS_KG = 9.1093837015e-31
ELEMENTARY_CHARGE_C = 1.602176634e-19


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR_J_S
    electron_mass: float = ELECTRON_MASS_KG
    elementary_charge: float = ELEMENTARY_CHARGE_C

    @property
    def hbar2_over_2m(self) -> float:
        """hbar^2 / (2 m_e) in eV nm^2."""
        return self.hbar**2 / (2.0 * self.electron_mass * self.elementary_charge) * 1e18


CONSTANTS = PhysicalConstants()
HBAR2_OVER_2M = CONSTANTS.hbar2_over_2m


# ---------------------------------------------------------------------------
# circuit description
# ---------------------------------------------------------------------------


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class Rectangular:
    """Rectangular barrier of height ``V0`` (eV) and length ``b`` (nm)."""

    V0: float
    b: float

    def __post_init__(self):
        _positive("V0", self.V0)
        _positive("b", self.b)


@dataclass(frozen=True)
class Triangular:
    """Linear barrier falling from ``V0`` at x = 0 to zero at x = ``c``."""

    V0: float
    c: float

    def __post_init__(self):
        _positive("V0", self.V0)
        _positive("c", self.c)


@dataclass(frozen=True)
class Delta:
    """Delta-function barrier of strength ``alpha`` (eV nm).

    The strength never enters the closure condition; it is carried for
    completeness of the circuit description.
    """

    alpha: float = 1.0

    def __post_init__(self):
        _positive("alpha", self.alpha)


@dataclass(frozen=True)
class ScaledRectangular:
    """Rectangular barrier with height ``xi_scale * V0`` and length ``b / xi_scale``."""

    V0: float
    b: float
    xi_scale: float = 1.0

    def __post_init__(self):
        _positive("V0", self.V0)
        _positive("b", self.b)
        if not (math.isfinite(self.xi_scale) and self.xi_scale >= 1.0):
            raise DomainError(f"xi_scale must be >= 1, got {self.xi_scale!r}")


BarrierModel = Union[Rectangular, Triangular, Delta, ScaledRectangular]

MODEL_NAMES = {
    Rectangular: "rect",
    Triangular: "tri",
    Delta: "delta",
    ScaledRectangular: "scaled",
}


def model_name(model: BarrierModel) -> str:
    return MODEL_NAMES[type(model)]


@dataclass(frozen=True)
class CircuitSpec:
    """A barrier model, the particle energy ``E`` (eV) and optionally the
    pre-barrier length ``|a|`` (nm). ``a`` itself is negative; only its
    magnitude is stored."""

    model: BarrierModel
    E: float
    pre_barrier_length: float | None = None

    def __post_init__(self):
        _positive("E", self.E)
        if self.pre_barrier_length is not None:
            _positive("pre_barrier_length", self.pre_barrier_length)
        m = self.model
        if isinstance(m, (Rectangular, Triangular)) and not self.E < m.V0:
            raise DomainError(
                f"tunneling regime requires E < V0 (E={self.E}, V0={m.V0})"
            )
        if isinstance(m, ScaledRectangular) and not self.E < m.xi_scale * m.V0:
            raise DomainError(
                f"tunneling regime requires E < xi_scale*V0 "
                f"(E={self.E}, xi_scale*V0={m.xi_scale * m.V0})"
            )

    @property
    def name(self) -> str:
        return model_name(self.model)

    def with_length(self, pre_barrier_length: float) -> "CircuitSpec":
        return replace(self, pre_barrier_length=pre_barrier_length)


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------


def wavenumber(E: float) -> float:
    """k = sqrt(E / (hbar^2/2m)) in 1/nm."""
    E = float(E)
    if not E >= 0.0:
        raise DomainError(f"energy must be non-negative, got {E!r}")
    return math.sqrt(E / HBAR2_OVER_2M)


def decay_constant(E: float, V0: float) -> float:
    """beta = sqrt((V0 - E) / (hbar^2/2m)) in 1/nm, for E < V0."""
    E = float(E)
    V0 = float(V0)
    if not E < V0:
        raise DomainError(f"decay constant needs E < V0 (E={E}, V0={V0})")
    return math.sqrt((V0 - E) / HBAR2_OVER_2M)


class TriangularParams(NamedTuple):
    gamma: float
    K: float
    X: float
    R: float
    b: float


def triangular_kinematics(E: float, V0: float, c: float) -> TriangularParams:
    """Airy scaling for the linear barrier.

    Returns ``gamma`` (1/nm), the Airy arguments ``K`` at x = 0 and ``X`` at
    x = c, ``R = gamma / k`` and the classical turning length ``b`` (nm).
    """
    E = float(E)
    V0 = float(V0)
    c = float(c)
    if not c > 0.0:
        raise DomainError(f"barrier length c must be positive, got {c!r}")
    if not 0.0 < E < V0:
        raise DomainError(f"triangular barrier needs 0 < E < V0 (E={E}, V0={V0})")
    gamma = (V0 / (HBAR2_OVER_2M * c)) ** (1.0 / 3.0)
    frac = E / V0
    gc = gamma * c
    K = -(1.0 - frac) * gc
    X = gc * frac
    R = gamma / wavenumber(E)
    return TriangularParams(gamma, K, X, R, (1.0 - frac) * c)


@dataclass(frozen=True)
class Kinematics:
    """Derived parameters for one circuit at one angle ``theta = k a``.

    Fields that do not apply to a model are ``None``: ``beta``/``phi`` are
    set for the rectangular models (``beta`` is beta' for the scaled one),
    ``gamma``, ``K``, ``X``, ``R`` and ``tunneling_extent_b`` for the
    triangular model.
    """

    E: float
    k: float
    theta: float = 0.0
    beta: float | None = None
    phi: float | None = None
    gamma: float | None = None
    K: float | None = None
    X: float | None = None
    R: float | None = None
    tunneling_extent_b: float | None = None

    def at(self, theta: float) -> "Kinematics":
        return replace(self, theta=float(theta))

    @property
    def pre_barrier_length(self) -> float:
        return abs(self.theta) / self.k

    def airy_argument(self, x: float) -> float:
        """Airy argument K + gamma x at position ``x`` (nm) inside the barrier."""
        if self.gamma is None:
            raise DomainError("airy_argument is only defined for the triangular model")
        return self.K + self.gamma * x


def kinematics(spec: CircuitSpec, theta: float | None = None) -> Kinematics:
    """Kinematics for ``spec``. ``theta`` defaults to ``-k |a|`` when the spec
    carries a pre-barrier length, and to 0 otherwise."""
    k = wavenumber(spec.E)
    if theta is None:
        theta = -k * spec.pre_barrier_length if spec.pre_barrier_length else 0.0
    m = spec.model
    if isinstance(m, Rectangular):
        beta = decay_constant(spec.E, m.V0)
        return Kinematics(spec.E, k, theta, beta=beta, phi=beta * m.b)
    if isinstance(m, ScaledRectangular):
        beta = decay_constant(spec.E, m.xi_scale * m.V0)
        return Kinematics(spec.E, k, theta, beta=beta, phi=beta * m.b / m.xi_scale)
    if isinstance(m, Triangular):
        tp = triangular_kinematics(spec.E, m.V0, m.c)
        return Kinematics(
            spec.E, k, theta, gamma=tp.gamma, K=tp.K, X=tp.X, R=tp.R,
            tunneling_extent_b=tp.b,
        )
    if isinstance(m, Delta):
        return Kinematics(spec.E, k, theta)
    raise TypeError(f"unsupported barrier model {m!r}")
