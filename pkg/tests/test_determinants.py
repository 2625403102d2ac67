import math

import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st

from nullpoint import (
    AiryQuad,
    CircuitSpec,
    Delta,
    DomainError,
    Rectangular,
    ScaledRectangular,
    Triangular,
    boundary_matrix,
    delta_consistency,
    det_rectangular,
    det_scaled_rectangular,
    det_shorted_triangular,
    det_triangular,
    determinant_form,
    kinematics,
    matrix_condition,
    numeric_det,
    scaled_limit_theta,
    wavenumber,
)
from nullpoint.determinants import shorted_triangular_grid, triangular_form
from nullpoint.kinematics import HBAR2_OVER_2M


def scipy_airy(x):
    ai, aip, bi, bip = sp.airy(x)
    return AiryQuad(float(ai), float(bi), float(aip), float(bip))


def mp_det(M):
    return float(mpmath.det(mpmath.matrix(M.tolist())))


def rect_spec(E, V0, b):
    return CircuitSpec(Rectangular(V0, b), E)


# ---------------------------------------------------------------------------
# rectangular


def test_rect_theta_zero_values():
    kin = kinematics(rect_spec(0.5, 1.0, 0.1), 0.0)
    assert det_rectangular(kin).value == pytest.approx(2 * (1 - math.cosh(kin.phi)))
    assert det_rectangular(kin).value < 0


def test_rect_zero_phi_limit():
    kin = kinematics(rect_spec(0.5, 1.0, 1e-12), 0.0)
    assert abs(det_rectangular(kin).value) < 1e-20


def test_rect_root_at_k_equal_beta():
    kin = kinematics(rect_spec(0.5, 1.0, 0.1), -0.3546)
    assert abs(det_rectangular(kin).value) < 1e-4
    exact = -math.acos(1 / math.cosh(kin.phi))
    assert abs(det_rectangular(kin.at(exact)).value) < 1e-14


rect_draw = st.tuples(st.floats(0.01, 0.99), st.floats(0.1, 5.0), st.floats(0.01, 2.0),
                      st.floats(-4 * math.pi - 1, 0.0))


@given(rect_draw)
def test_rect_closed_form_equals_numeric(draw):
    frac, V0, b, theta = draw
    spec = rect_spec(frac * V0, V0, b)
    kin = kinematics(spec, theta)
    closed = det_rectangular(kin).value
    M = boundary_matrix(spec, kin)
    raw = mp_det(M) / (2 * kin.k * kin.beta)
    mag = max(1.0, math.cosh(kin.phi) * (kin.beta / kin.k + kin.k / kin.beta))
    assert abs(closed - raw) <= 1e-10 * mag
    np_raw = numeric_det(spec, kin).value / (2 * kin.k * kin.beta)
    assert abs(closed - np_raw) <= 1e-10 * mag


@given(rect_draw)
def test_rect_periodic(draw):
    frac, V0, b, theta = draw
    kin = kinematics(rect_spec(frac * V0, V0, b), theta)
    a = det_rectangular(kin).value
    c = det_rectangular(kin.at(theta - 2 * math.pi)).value
    scale = 2 + 2 * math.cosh(kin.phi) * (1 + kin.beta / kin.k + kin.k / kin.beta)
    assert abs(a - c) <= 1e-12 * scale


@given(st.floats(0.05, 5.0), st.floats(0.01, 2.0), st.floats(-10.0, 0.0))
def test_rect_half_height_form(V0, b, theta):
    kin = kinematics(rect_spec(V0 / 2, V0, b), theta)
    want = 2 * (1 - math.cosh(kin.phi) * math.cos(theta))
    assert det_rectangular(kin).value == pytest.approx(want, abs=1e-12 * math.cosh(kin.phi))


def test_rect_requires_rect_kinematics():
    with pytest.raises(DomainError):
        det_rectangular(kinematics(CircuitSpec(Delta(), 1.0)))


# ---------------------------------------------------------------------------
# triangular


def test_tri_constant_term_is_wronskian():
    kin = kinematics(CircuitSpec(Triangular(1.0, 1.0), 0.3))
    form = determinant_form(CircuitSpec(Triangular(1.0, 1.0), 0.3))
    assert form.c0 == pytest.approx(-2 * kin.R / math.pi, rel=1e-12)


def test_tri_sign_change_near_minus_two_pi_bracket():
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.5)
    kin = kinematics(spec)
    a = det_triangular(kin.at(-2 * math.pi * 0.99)).value
    b = det_triangular(kin.at(-2 * math.pi * 1.01)).value
    # the crossing in this band sits at about -6.085 rad, not inside +-1%
    assert a * b > 0
    lo = det_triangular(kin.at(-6.0)).value
    hi = det_triangular(kin.at(-6.2)).value
    assert lo * hi < 0


tri_draw = st.tuples(st.floats(0.01, 0.99), st.floats(0.2, 5.0), st.floats(0.05, 3.0),
                     st.floats(-4 * math.pi - 1, 0.0))


@given(tri_draw)
def test_tri_closed_form_equals_numeric(draw):
    frac, V0, c, theta = draw
    spec = CircuitSpec(Triangular(V0, c), frac * V0)
    kin = kinematics(spec, theta)
    assert abs(kin.K) <= 15 and kin.X <= 15
    d = det_triangular(kin)
    # independent Airy source and an extended-precision determinant
    M = boundary_matrix(spec, kin, airy=scipy_airy)
    assert abs(d.value - mp_det(M)) <= 1e-10 * d.scale
    assert abs(d.value - numeric_det(spec, kin).value) <= 1e-10 * d.scale


def test_tri_accepts_alternate_airy_source():
    kin = kinematics(CircuitSpec(Triangular(1.0, 1.0), 0.4), -2.0)
    a = det_triangular(kin).value
    b = det_triangular(kin, airy=scipy_airy).value
    assert a == pytest.approx(b, abs=1e-12)


def test_tri_form_scale_positive():
    q = scipy_airy(-1.0)
    form = triangular_form(2.0, q, scipy_airy(1.0))
    assert form.scale > 0


# ---------------------------------------------------------------------------
# shorted triangular


@pytest.mark.parametrize("K", [-3.0, -0.5, 0.0])
def test_shorted_equal_arguments_vanish(K):
    if K == 0.0:
        assert det_shorted_triangular(0.0, 0.0).value == 0.0
    else:
        with pytest.raises(DomainError):
            det_shorted_triangular(K, K)


def test_shorted_matches_scipy_and_grid():
    K = np.array([-7.65, -2.0, -0.05])
    X = np.array([0.05, 3.0, 6.95, 7.0])
    G = shorted_triangular_grid(K, X, 1.3)
    for i, k in enumerate(K):
        for j, x in enumerate(X):
            qk, qx = scipy_airy(k), scipy_airy(x)
            want = 1.3 * ((qx.ai - qk.ai) * (qk.bip - qx.bip) + (qx.bi - qk.bi) * (qx.aip - qk.aip))
            assert G[i, j] == pytest.approx(want, rel=1e-11, abs=1e-13)
            assert det_shorted_triangular(k, x, 1.3).value == G[i, j]


def test_shorted_is_theta_zero_triangular_determinant():
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.37)
    kin = kinematics(spec, 0.0)
    full = det_triangular(kin).value
    short = det_shorted_triangular(kin.K, kin.X, kin.R).value
    assert full == pytest.approx(short, abs=1e-12)


# ---------------------------------------------------------------------------
# delta


def test_delta_values():
    assert abs(delta_consistency(-math.pi).value) < 1e-15
    assert delta_consistency(-math.pi / 2).value == -1.0
    assert math.pi / wavenumber(1.0) == pytest.approx(0.6132, abs=1e-3)


@given(st.floats(-20.0, 0.0))
def test_delta_numeric_det(theta):
    spec = CircuitSpec(Delta(2.5), 0.7)
    kin = kinematics(spec, theta)
    assert numeric_det(spec, kin).value == pytest.approx(4 * math.sin(theta) ** 2, abs=1e-12)


# ---------------------------------------------------------------------------
# scaled rectangular


@given(st.floats(0.01, 0.99), st.floats(0.05, 2.0), st.floats(-8.0, 0.0))
def test_scaled_unit_xi_is_rectangular(frac, b, theta):
    a = det_scaled_rectangular(frac, 1.0, b, 1.0, theta).value
    c = det_rectangular(kinematics(rect_spec(frac, 1.0, b), theta)).value
    assert a == c


def test_scaled_domain():
    with pytest.raises(DomainError):
        det_scaled_rectangular(3.0, 1.0, 0.5, 2.0, -1.0)
    assert math.isfinite(det_scaled_rectangular(1.5, 1.0, 0.5, 2.0, -1.0).value)


def test_limit_theta_equation():
    E, V0, b = 0.5, 1.0, 0.5
    t = scaled_limit_theta(E, V0, b)
    assert t == pytest.approx(-2.12, abs=0.02)
    assert -math.pi < t < 0
    lhs = V0 * b / (2 * HBAR2_OVER_2M * wavenumber(E))
    assert (math.cos(t) - 1) / math.sin(t) == pytest.approx(lhs, rel=1e-12)
    assert scaled_limit_theta(E, V0, b, period=2) == pytest.approx(t - 4 * math.pi)


def test_limit_theta_extremes():
    assert -1e-8 < scaled_limit_theta(0.5, 1.0, 1e-10) < 0
    assert scaled_limit_theta(0.5, 1.0, 1e10) == pytest.approx(-math.pi, abs=1e-8)
    with pytest.raises(DomainError):
        scaled_limit_theta(0.5, 1.0, 0.0)


# ---------------------------------------------------------------------------
# conditioning


def test_condition_small_at_root_large_elsewhere():
    spec = rect_spec(0.5, 1.0, 0.1)
    kin = kinematics(spec)
    root = -math.acos(1 / math.cosh(kin.phi))
    assert matrix_condition(boundary_matrix(spec, kin.at(root))) < 1e-7
    assert matrix_condition(boundary_matrix(spec, kin.at(root - 0.5))) > 1e-3


def test_form_vector_evaluate_matches_scalar():
    form = determinant_form(CircuitSpec(Triangular(1.0, 0.5), 0.2))
    ts = np.linspace(-10, 0, 37).reshape(37, 1)
    vals = form.evaluate(ts)
    assert vals.shape == (37, 1)
    assert vals[5, 0] == form(ts[5, 0])
