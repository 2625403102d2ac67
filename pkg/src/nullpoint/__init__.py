"""Null-point solver for closed tunneling circuits.

A barrier (rectangular, triangular, delta or scaled rectangular) closed by a
field-free wire of length |a| admits a standing wave only where the 4x4
boundary determinant vanishes. This package evaluates those determinants,
finds their zeros in theta = k a and recovers the wavefunction.
"""

from . import _backend
from .airy import AiryQuad, airy_eval, airy_eval_array, airy_oracle
from .determinants import (
    DeterminantValue,
    TrigForm,
    boundary_matrix,
    delta_consistency,
    det_rectangular,
    det_scaled_rectangular,
    det_shorted_triangular,
    det_triangular,
    determinant_form,
    matrix_condition,
    numeric_det,
    scaled_limit_theta,
)
from .errors import DegenerateRootError, DomainError, NoRootError, NullPointError
from .kinematics import (
    CONSTANTS,
    HBAR2_OVER_2M,
    CircuitSpec,
    Delta,
    Kinematics,
    PhysicalConstants,
    Rectangular,
    ScaledRectangular,
    Triangular,
    decay_constant,
    kinematics,
    triangular_kinematics,
    wavenumber,
)
from .solver import (
    CoefficientSet,
    RootSolution,
    WavefunctionTrace,
    closed_form_coefficients_rectangular,
    recover_coefficients,
    recover_coefficients_delta,
    recover_coefficients_rectangular,
    recover_coefficients_triangular,
    scan_roots,
    solve_for_length,
    trace_wavefunction,
)

__version__ = "0.1.0"

backend = _backend.name
