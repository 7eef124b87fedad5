import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaline.gamma_chi import (
    chi_one_line_bound,
    g_function,
    gamma_magnitude_envelope,
    log_xi1,
    log_xi2,
    shift_count,
    shifted_gamma_envelope,
    xi1,
    xi2,
)
from zetaline.oracles import chi_direct, gamma_direct


def mp_log_abs_gamma(sigma, t):
    with mpmath.workdps(30):
        return float(mpmath.re(mpmath.loggamma(mpmath.mpc(sigma, t))))


def test_xi_tend_to_one():
    assert xi1(1.0, 1e12) == pytest.approx(1.0, abs=1e-12)
    assert xi2(1.0, 1e12) == pytest.approx(1.0, abs=1e-12)


def test_xi2_worked_value():
    assert log_xi2(1.0, 10.0) == pytest.approx(0.5 / 200 + 1 / 1200 + math.pi / 240, rel=1e-14)
    assert log_xi2(1.0, 10.0) == pytest.approx(0.016424, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.01, max_value=3.0), st.floats(min_value=1.0, max_value=400.0))
def test_envelope_contains_mpmath(sigma, t):
    env = gamma_magnitude_envelope(sigma, t)
    assert env.contains_log(mp_log_abs_gamma(sigma, t), tol=1e-13)


@pytest.mark.parametrize("sigma,t", [(0.5, 10.0), (3.0, 1.0), (1.0, 5.0)])
def test_envelope_contains_oracle(sigma, t):
    env = gamma_magnitude_envelope(sigma, t)
    r = gamma_direct(sigma, t)
    assert env.lower <= r.value - r.error_bound
    assert r.value + r.error_bound <= env.upper


def test_envelope_ratio_tends_to_one():
    assert log_xi2(1.0, 1e6) - log_xi1(1.0, 1e6) < 1e-6
    for t in (10.0, 100.0, 1e3):
        env = gamma_magnitude_envelope(1.0, t)
        # width is the xi gap plus the outward rounding of the log
        slack = 3e-9 * abs(env.log_lower) + 3e-12
        assert env.log_upper - env.log_lower <= log_xi2(1.0, t) - log_xi1(1.0, t) + slack


def test_negative_t_uses_abs():
    assert gamma_magnitude_envelope(0.5, -10.0) == gamma_magnitude_envelope(0.5, 10.0)


def test_shift_count():
    assert shift_count(0.0) == 1
    assert shift_count(-1.5) == 2
    assert shift_count(-2.0) == 3
    assert shift_count(-0.3) == 1


@pytest.mark.parametrize("sigma,t", [(0.0, 10.0), (-1.5, 50.0), (-0.5, 3.0), (-2.0, 20.0)])
def test_shifted_envelope(sigma, t):
    env = shifted_gamma_envelope(sigma, t)
    assert env.contains_log(mp_log_abs_gamma(sigma, t), tol=1e-13)


def test_shifted_envelope_domain():
    with pytest.raises(ValueError):
        shifted_gamma_envelope(0.5, 10.0)
    with pytest.raises(ValueError):
        shifted_gamma_envelope(-1.0, 0.0)


def test_gamma_envelope_domain():
    with pytest.raises(ValueError):
        gamma_magnitude_envelope(0.0, 1.0)
    with pytest.raises(ValueError):
        log_xi1(1.0, 0.0)


def test_g_limit_and_monotone():
    assert g_function(1e12) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)
    ts = np.geomspace(1, 1e10, 200)
    g = [g_function(t) for t in ts]
    assert all(a >= b for a, b in zip(g, g[1:]))


@pytest.mark.parametrize("t", [1.0, 5.0, 100.0, 1e4])
def test_chi_bound_against_mpmath(t):
    with mpmath.workdps(30):
        s = mpmath.mpc(1, t)
        chi = abs(mpmath.zeta(s) / mpmath.zeta(1 - s))
    assert float(chi) <= chi_one_line_bound(t)
    r = chi_direct(t)
    assert r.value == pytest.approx(float(chi), rel=1e-10)


def test_chi_asymptotic():
    t = 1e4
    r = chi_direct(t)
    assert r.value * math.sqrt(t) <= g_function(t)
    assert r.value * math.sqrt(t) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-3)
