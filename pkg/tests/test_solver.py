import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from nullpoint import (
    AiryQuad,
    CircuitSpec,
    DegenerateRootError,
    Delta,
    DomainError,
    Kinematics,
    NoRootError,
    Rectangular,
    ScaledRectangular,
    Triangular,
    boundary_matrix,
    closed_form_coefficients_rectangular,
    determinant_form,
    kinematics,
    recover_coefficients,
    recover_coefficients_triangular,
    scan_roots,
    solve_for_length,
    trace_wavefunction,
    wavenumber,
)

TWO_PI = 2 * math.pi


def scipy_airy(x):
    ai, aip, bi, bip = sp.airy(x)
    return AiryQuad(float(ai), float(bi), float(aip), float(bip))


def analytic_roots(form, lo, hi):
    """Zeros of c0 + cs sin t + cc cos t = rho cos(t - phi) + c0 in (lo, hi)."""
    rho = math.hypot(form.cs, form.cc)
    if rho <= abs(form.c0):
        return []
    phi = math.atan2(form.cs, form.cc)
    d = math.acos(-form.c0 / rho)
    out = []
    for base in (phi + d, phi - d):
        n = math.ceil((lo - base) / TWO_PI)
        t = base + n * TWO_PI
        while t < hi:
            if t > lo:
                out.append(t)
            t += TWO_PI
    return sorted(out, key=abs)


def brute_roots(spec, lo, hi, n=20001):
    """Sign changes of the literal 4x4 determinant (scipy Airy values),
    polished with brentq."""
    base = kinematics(spec, 0.0)

    def f(t):
        return np.linalg.det(boundary_matrix(spec, base.at(t), airy=scipy_airy))

    ts = np.linspace(lo, hi, n)
    vs = np.array([f(t) for t in ts])
    idx = np.nonzero(np.sign(vs[:-1]) * np.sign(vs[1:]) < 0)[0]
    return sorted((brentq(f, ts[i], ts[i + 1], xtol=1e-14) for i in idx), key=abs)


# ---------------------------------------------------------------------------
# scan_roots


def test_rect_two_roots_in_first_period():
    roots = scan_roots(CircuitSpec(Rectangular(1.0, 0.1), 0.5), (-TWO_PI, 0.0))
    assert [r.branch_index for r in roots] == [0, 1]
    assert roots[0].theta == pytest.approx(-0.3546, abs=1e-4)
    assert roots[1].theta == pytest.approx(-(TWO_PI - 0.35459), abs=1e-4)
    phi = kinematics(CircuitSpec(Rectangular(1.0, 0.1), 0.5)).phi
    assert roots[0].theta == pytest.approx(-math.acos(1 / math.cosh(phi)), abs=1e-12)


def test_tri_root_between_minus_seven_and_minus_five():
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.5)
    roots = scan_roots(spec, (-7.0, -5.0))
    assert len(roots) == 1
    (want,) = brute_roots(spec, -7.0, -5.0)
    assert roots[0].theta == pytest.approx(want, abs=1e-9)
    assert roots[0].theta == pytest.approx(-6.0852, abs=1e-3)


def test_delta_roots_exact():
    roots = scan_roots(CircuitSpec(Delta(), 0.8), (-4 * math.pi, 0.0))
    got = [r.theta for r in roots]
    assert len(got) == 3
    for g, n in zip(got, (1, 2, 3)):
        assert abs(g + n * math.pi) < 1e-12


def test_roots_sorted_and_lengths_consistent():
    spec = CircuitSpec(Triangular(1.3, 0.7), 0.4)
    roots = scan_roots(spec)
    assert [abs(r.theta) for r in roots] == sorted(abs(r.theta) for r in roots)
    k = wavenumber(0.4)
    for i, r in enumerate(roots):
        assert r.branch_index == i
        assert r.pre_barrier_length == abs(r.theta) / k
        assert r.theta < 0
        assert r.converged


@pytest.mark.parametrize(
    "spec",
    [
        CircuitSpec(Rectangular(1.0, 0.5), 0.3),
        CircuitSpec(Triangular(1.0, 1.0), 0.99),
        CircuitSpec(Triangular(2.0, 0.3), 0.1),
        CircuitSpec(ScaledRectangular(1.0, 1.0, 10.0), 0.5),
    ],
)
def test_roots_match_brute_force(spec):
    lo, hi = -4 * math.pi - 1, -1e-9
    got = [r.theta for r in scan_roots(spec)]
    want = brute_roots(spec, lo, hi)
    assert len(got) == len(want)
    for g, w in zip(got, want):
        assert g == pytest.approx(w, abs=1e-9)


def test_scan_is_deterministic():
    spec = CircuitSpec(Triangular(1.0, 0.2), 0.45)
    assert scan_roots(spec) == scan_roots(spec)


@pytest.mark.parametrize("window", [(-1.0, -1.0), (-1.0, -2.0), (-1.0, 0.5), (-math.inf, 0.0)])
def test_bad_window(window):
    with pytest.raises(DomainError):
        scan_roots(CircuitSpec(Delta(), 1.0), window)


def test_bad_grid_step():
    with pytest.raises(DomainError):
        scan_roots(CircuitSpec(Delta(), 1.0), grid_step=0.0)


def test_theta_zero_excluded():
    roots = scan_roots(CircuitSpec(Delta(), 1.0), (-1.0, 0.0))
    assert roots == []


rect_params = st.tuples(st.floats(0.01, 0.99), st.floats(0.2, 5.0), st.floats(0.05, 2.0))


@given(rect_params)
def test_rect_analytic_roots(p):
    frac, V0, b = p
    spec = CircuitSpec(Rectangular(V0, b), frac * V0)
    if kinematics(spec).phi > 6:
        return
    form = determinant_form(spec)
    got = [r.theta for r in scan_roots(spec)]
    want = analytic_roots(form, -4 * math.pi - 1, 0.0)
    want = [w for w in want if w < -1e-9]
    assert len(got) == len(want)
    for g, w in zip(got, want):
        assert g == pytest.approx(w, abs=1e-9)


@given(rect_params)
def test_rect_two_roots_per_period(p):
    frac, V0, b = p
    roots = scan_roots(CircuitSpec(Rectangular(V0, b), frac * V0), (-TWO_PI, 0.0))
    assert len(roots) == 2


# ---------------------------------------------------------------------------
# solve_for_length


def test_solve_for_length_examples():
    assert solve_for_length(CircuitSpec(Delta(), 1.0)).pre_barrier_length == pytest.approx(
        0.6132, abs=1e-3)
    rect = solve_for_length(CircuitSpec(Rectangular(1.0, 0.1), 0.5))
    assert rect.pre_barrier_length == pytest.approx(0.0979, abs=1e-3)


def test_solve_for_length_triangular_high_energy():
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.99)
    sol = solve_for_length(spec, 0)
    want = brute_roots(spec, -TWO_PI, -1e-9)[0]
    assert sol.theta == pytest.approx(want, abs=1e-9)
    assert sol.pre_barrier_length == pytest.approx(abs(want) / wavenumber(0.99), rel=1e-12)
    # branch 0 is well short of the free-wire length 2 pi / k
    assert sol.pre_barrier_length < 0.5 * TWO_PI / wavenumber(0.99)


def test_solve_for_length_missing_branch():
    with pytest.raises(NoRootError):
        solve_for_length(CircuitSpec(Delta(), 1.0), branch_index=10)
    with pytest.raises(DomainError):
        solve_for_length(CircuitSpec(Delta(), 1.0), branch_index=-1)


# ---------------------------------------------------------------------------
# coefficients


SPECS = [
    CircuitSpec(Rectangular(1.0, 0.1), 0.5),
    CircuitSpec(Rectangular(1.0, 1.0), 0.99),
    CircuitSpec(Rectangular(3.0, 0.4), 0.2),
    CircuitSpec(ScaledRectangular(1.0, 0.5, 100.0), 0.5),
    CircuitSpec(Triangular(1.0, 1.0), 0.5),
    CircuitSpec(Triangular(1.0, 2.0), 0.05),
    CircuitSpec(Delta(), 0.3),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_coefficients_certify_roots(spec):
    for r in scan_roots(spec):
        cs = recover_coefficients(spec, r.theta)
        assert cs.A == 1.0
        assert cs.accepted, cs.boundary_residuals
        assert r.matrix_condition <= 1e-7


def test_coefficients_fail_off_root():
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.5)
    r = scan_roots(spec)[0]
    cs = recover_coefficients(spec, r.theta + 0.1)
    assert abs(cs.boundary_residuals[3]) > 1e-3
    assert not cs.accepted
    rect = CircuitSpec(Rectangular(1.0, 0.3), 0.4)
    assert not recover_coefficients(rect, scan_roots(rect)[0].theta + 0.1).accepted


def test_coefficients_are_null_vector():
    spec = CircuitSpec(Rectangular(1.0, 0.5), 0.3)
    r = scan_roots(spec)[0]
    kin = kinematics(spec, r.theta)
    M = boundary_matrix(spec, kin)
    _, _, vt = np.linalg.svd(M)
    v = vt[-1] / vt[-1][0]
    cs = recover_coefficients(spec, r.theta)
    assert cs.as_vector() == pytest.approx(v, abs=1e-8)


def test_triangular_degenerate_reduction():
    kin = Kinematics(E=0.5, k=3.0, theta=-math.pi, gamma=1.0, K=-0.5, X=-0.5, R=1 / 3)
    spec = CircuitSpec(Triangular(1.0, 1.0), 0.5)
    with pytest.raises(DegenerateRootError):
        recover_coefficients_triangular(spec, kin)


def test_closed_form_rectangular_coefficients():
    spec = CircuitSpec(Rectangular(1.0, 0.1), 0.5)
    kin = kinematics(spec, scan_roots(spec)[0].theta)
    cs = closed_form_coefficients_rectangular(spec, kin)
    assert (cs.C, cs.D) == (1.0, 0.0)
    # the closed form does not satisfy the origin-derivative condition
    assert not cs.accepted
    hi = CircuitSpec(Rectangular(1.0, 0.5), 0.99)
    kin = kinematics(hi, scan_roots(hi)[0].theta)
    assert closed_form_coefficients_rectangular(hi, kin).C == pytest.approx(5.475, abs=0.01)


def test_closed_form_cos_guard():
    spec = CircuitSpec(Rectangular(1.0, 0.1), 0.5)
    kin = kinematics(spec, -math.pi / 2)
    assert "value" in closed_form_coefficients_rectangular(spec, kin).method


# ---------------------------------------------------------------------------
# wavefunction


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_wavefunction_continuity(spec):
    r = scan_roots(spec)[0]
    kin = kinematics(spec, r.theta)
    cs = recover_coefficients(spec, r.theta)
    tr = trace_wavefunction(spec, cs, kin, 50)
    assert tr.origin_residual < 1e-8
    assert tr.closure_residual < 1e-8
    assert tr.x[0] == pytest.approx(r.theta / kin.k)
    assert tr.x.size == tr.psi.size == 100
    assert list(np.unique(tr.region)) == [1, 2]


def test_wavefunction_rect_origin_values():
    spec = CircuitSpec(Rectangular(1.0, 0.2), 0.6)
    r = scan_roots(spec)[0]
    kin = kinematics(spec, r.theta)
    tr = trace_wavefunction(spec, recover_coefficients(spec, r.theta), kin, 11)
    assert tr.psi[10] == 1.0
    assert tr.psi[11] == pytest.approx(1.0, abs=1e-15)
    assert tr.x[-1] == pytest.approx(0.2)


def test_wavefunction_triangular_far_end():
    spec = CircuitSpec(Triangular(1.0, 1.5), 0.3)
    r = scan_roots(spec)[1]
    kin = kinematics(spec, r.theta)
    tr = trace_wavefunction(spec, recover_coefficients(spec, r.theta), kin, 5)
    assert tr.x[-1] == 1.5


def test_wavefunction_delta_is_cosine():
    spec = CircuitSpec(Delta(), 1.0)
    for n, r in enumerate(scan_roots(spec, (-4 * math.pi, 0.0)), start=1):
        kin = kinematics(spec, r.theta)
        tr = trace_wavefunction(spec, recover_coefficients(spec, r.theta), kin, 21)
        assert tr.psi == pytest.approx(np.cos(kin.k * tr.x), abs=1e-12)
        assert tr.psi[0] == pytest.approx((-1) ** n, abs=1e-12)
        assert tr.psi[-1] == pytest.approx((-1) ** n, abs=1e-12)


def test_wavefunction_normalization():
    spec = CircuitSpec(Rectangular(1.0, 0.5), 0.4)
    r = scan_roots(spec)[1]
    kin = kinematics(spec, r.theta)
    tr = trace_wavefunction(spec, recover_coefficients(spec, r.theta), kin, 2001, True)
    total = sum(
        trapezoid(tr.psi[s] ** 2, tr.x[s]) for s in (slice(0, 2001), slice(2001, None))
    )
    assert total == pytest.approx(1.0, rel=1e-12)
    assert tr.normalized and tr.norm > 0


def test_wavefunction_needs_two_samples():
    spec = CircuitSpec(Delta(), 1.0)
    r = scan_roots(spec)[0]
    with pytest.raises(DomainError):
        trace_wavefunction(spec, recover_coefficients(spec, r.theta),
                           kinematics(spec, r.theta), 1)
