import math

import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st

from nullpoint import DomainError, airy_eval, airy_eval_array, airy_oracle

INV_PI = 1.0 / math.pi


def envelope(x):
    """Modulus scale of Ai/Bi and their derivatives, used as the reference for
    relative error where the functions oscillate through zero."""
    ax = abs(x)
    q = max(ax, 1.0) ** 0.25
    if x >= 0:
        z = 2.0 / 3.0 * ax**1.5
        return (np.exp(-z) / q, np.exp(z) / q, np.exp(-z) * q, np.exp(z) * q)
    return (1 / q, 1 / q, q, q)


def test_values_at_origin():
    q = airy_eval(0.0)
    assert q.ai == pytest.approx(0.3550280539, abs=1e-9)
    assert q.bi == pytest.approx(0.6149266274, abs=1e-9)
    assert q.aip == pytest.approx(-0.2588194038, abs=1e-9)
    assert q.bip == pytest.approx(0.4482883574, abs=1e-9)


@pytest.mark.parametrize("x", [-15.0, -5.0, -1.3, 0.0, 0.7, 1.0, 3.3, 5.0, 9.9, 15.0])
def test_matches_mpmath(x):
    q = airy_eval(x)
    ref = [
        float(mpmath.airyai(x)), float(mpmath.airybi(x)),
        float(mpmath.airyai(x, derivative=1)), float(mpmath.airybi(x, derivative=1)),
    ]
    env = envelope(x)
    for got, want, e in zip((q.ai, q.bi, q.aip, q.bip), ref, env):
        assert abs(got - want) <= 1e-12 * e


def test_matches_scipy_wide_range():
    xs = np.linspace(-80.0, 80.0, 4001)
    q = airy_eval_array(xs)
    ai, aip, bi, bip = sp.airy(xs)
    for got, want, k in ((q.ai, ai, 0), (q.bi, bi, 1), (q.aip, aip, 2), (q.bip, bip, 3)):
        env = np.array([envelope(x)[k] for x in xs])
        assert np.max(np.abs(got - want) / env) < 1e-12


@pytest.mark.parametrize("x", [-5.0, 1.0, 5.0])
def test_oracle_agreement(x):
    q = airy_eval(x)
    o = airy_oracle(x)
    for a, b in zip((q.ai, q.bi, q.aip, q.bip), (o.ai, o.bi, o.aip, o.bip)):
        assert a == pytest.approx(b, rel=1e-11, abs=1e-11)


def test_oracle_start_and_step_halving():
    o = airy_oracle(0.0)
    assert o.ai == float(mpmath.mpf(1) / (mpmath.mpf(3) ** (mpmath.mpf(2) / 3) * mpmath.gamma(mpmath.mpf(2) / 3)))
    a = airy_oracle(3.0, step=0.25)
    b = airy_oracle(3.0, step=0.125)
    for u, v in zip((a.ai, a.bi, a.aip, a.bip), (b.ai, b.bi, b.aip, b.bip)):
        assert abs(u - v) <= 1e-12 * max(1.0, abs(v))


def test_oracle_rejects_out_of_range():
    with pytest.raises(DomainError):
        airy_oracle(25.0)


def test_wronskian_dense_grid():
    xs = np.linspace(-15.0, 15.0, 10_000)
    q = airy_eval_array(xs)
    w = q.wronskian()
    assert np.max(np.abs(w - INV_PI) / INV_PI) < 1e-12


def test_finite_differences():
    xs = np.linspace(-10.0, 10.0, 801)
    h = 1e-4
    p = airy_eval_array(xs + h)
    m = airy_eval_array(xs - h)
    q = airy_eval_array(xs)
    fd_ai = (p.ai - m.ai) / (2 * h)
    fd_bi = (p.bi - m.bi) / (2 * h)
    assert np.max(np.abs(fd_ai - q.aip)) < 1e-6
    # Bi' reaches ~1e4 at x = 10; the check is relative to max(1, |Bi'|)
    assert np.max(np.abs(fd_bi - q.bip) / np.maximum(1.0, np.abs(q.bip))) < 1e-6


def _zeros(xs, ys):
    idx = np.nonzero(np.sign(ys[:-1]) != np.sign(ys[1:]))[0]
    return xs[idx]


def test_zero_interlacing():
    xs = np.linspace(-15.0, -1.0, 140_001)
    q = airy_eval_array(xs)
    za = _zeros(xs, q.ai)
    zb = _zeros(xs, q.bi)
    merged = sorted([(z, "a") for z in za] + [(z, "b") for z in zb])
    labels = [t for _, t in merged]
    assert len(za) >= 8
    assert all(u != v for u, v in zip(labels, labels[1:]))
    assert za[-1] == pytest.approx(sp.ai_zeros(1)[0][0], abs=1e-4)


def test_monotone_on_positive_axis():
    xs = np.linspace(0.0, 30.0, 3001)
    q = airy_eval_array(xs)
    assert np.all(q.ai > 0) and np.all(np.diff(q.ai) < 0)
    assert np.all(q.bi > 0) and np.all(np.diff(q.bi) > 0)


@pytest.mark.parametrize("x", [80.5, -81.0, 1e6])
def test_overflow_names_bi(x):
    with pytest.raises(OverflowError, match="Bi"):
        airy_eval(x)


def test_guard_boundary_is_finite():
    for x in (80.0, -80.0):
        q = airy_eval(x)
        assert all(math.isfinite(v) for v in (q.ai, q.bi, q.aip, q.bip))


@pytest.mark.parametrize("x", [math.nan, math.inf])
def test_non_finite_rejected(x):
    with pytest.raises((ValueError, OverflowError)):
        airy_eval(x)


def test_array_shape_preserved():
    xs = np.linspace(-2, 2, 12).reshape(3, 4)
    q = airy_eval_array(xs)
    assert q.ai.shape == (3, 4)
    assert q.bip[1, 2] == airy_eval(xs[1, 2]).bip


@given(st.floats(-15.0, 15.0))
def test_wronskian_property(x):
    assert airy_eval(x).wronskian() == pytest.approx(INV_PI, rel=1e-12)
