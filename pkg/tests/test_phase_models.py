import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaline.phase_models import EnvelopeError, PhaseFunction, derivative_envelope, log_phase_derivative


def test_first_derivative_at_two_pi():
    assert log_phase_derivative(2 * math.pi, 1.0, 1) == pytest.approx(-1.0, rel=1e-15)


def test_fifth_derivative_closed_form():
    # -(t/2pi) 4! / x^5 at t = pi, x = 2
    assert log_phase_derivative(math.pi, 2.0, 5) == pytest.approx(-3 / 8, rel=1e-15)


def test_finite_difference_with_mpmath():
    import mpmath

    t, x = 1e5, 100.0
    exact = mpmath.diff(lambda y: -(t / (2 * mpmath.pi)) * mpmath.log(y), x, 5)
    assert log_phase_derivative(t, x, 5) == pytest.approx(float(exact), rel=1e-6)


def test_single_point_envelope():
    env = derivative_envelope(PhaseFunction.zeta_log(2 * math.pi), 1, 1, 1)
    assert env.W == pytest.approx(1.0, rel=1e-8)
    assert env.lam == pytest.approx(1.0, rel=1e-8)


def test_fifth_order_envelope_matches_closed_form():
    t, a, L = 1e7, 1500, 400
    b = a + L - 1
    env = derivative_envelope(PhaseFunction.zeta_log(t), a, L, 5)
    assert env.W == pytest.approx(math.pi * b**5 / (12 * t), rel=1e-8)
    assert env.lam == pytest.approx((b / a) ** 5, rel=1e-8)
    assert env.W >= math.pi * b**5 / (12 * t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(2, 4))
def test_polynomial_envelope_brackets_dense_grid(seed, k):
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-1, 1, size=k + 3)
    phase = PhaseFunction.polynomial(coeffs)
    a, L = int(rng.integers(1, 50)), int(rng.integers(1, 50))
    try:
        env = derivative_envelope(phase, a, L, k)
    except EnvelopeError:
        return
    xs = np.linspace(a, a + L - 1, 2001)
    vals = np.abs(np.polynomial.Polynomial(coeffs).deriv(k)(xs))
    assert np.all(vals >= env.lower * (1 - 1e-12))
    assert np.all(vals <= env.upper * (1 + 1e-12))


def test_vanishing_derivative_raises():
    # f'' = 2 - 2x vanishes at x = 1.5... pick roots inside [1, 3]
    phase = PhaseFunction.polynomial([0.0, 0.0, 1.0, -1 / 6])  # f'' = 2 - x
    with pytest.raises(EnvelopeError):
        derivative_envelope(phase, 1, 3, 2)


def test_domain_errors():
    with pytest.raises(ValueError):
        PhaseFunction.zeta_log(-1.0)
    with pytest.raises(ValueError):
        derivative_envelope(PhaseFunction.zeta_log(10.0), 1, 0, 1)
    with pytest.raises(ValueError):
        log_phase_derivative(10.0, 1.0, 0)


def test_zeta_log_phase_value():
    f = PhaseFunction.zeta_log(3.0)
    assert f(np.array([1.0]))[0] == 0.0
    assert f(math.e) == pytest.approx(-3 / (2 * math.pi))
