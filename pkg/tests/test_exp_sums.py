import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from zetaline.exp_sums import (
    Beta4Mode,
    EtaVector,
    SecondDerivVariant,
    alpha3_tilde,
    beta3_tilde,
    fifth_derivative_bound,
    fifth_derivative_square,
    fifth_order_coeffs,
    fourth_derivative_bound,
    fourth_derivative_square,
    fourth_order_coeffs,
    fourth_order_tildes,
    kuzmin_landau_bound,
    second_derivative_bound,
    summation_prefactor,
    third_derivative_bound,
    third_derivative_square,
    third_order_coeffs,
    weighted_power_sum_bound,
)
from zetaline.oracles import exp_sum_brute, weighted_power_sum_brute
from zetaline.phase_models import DerivEnvelope, PhaseFunction, derivative_envelope

ETA = EtaVector(1.0, 1.0, 2.2)
Ws = st.floats(min_value=1.01, max_value=1e30)
lams = st.floats(min_value=1.0, max_value=50.0)
etas = st.floats(min_value=0.05, max_value=10.0)


def brute_abs(phase, a, L):
    r = exp_sum_brute(phase, a, L)
    return abs(r.value) + r.error_bound


# --- order 1 ---------------------------------------------------------------


def test_kuzmin_landau_values():
    assert kuzmin_landau_bound(2) == pytest.approx(4 / math.pi, rel=1e-8)
    assert kuzmin_landau_bound(math.pi) == pytest.approx(2.0, rel=1e-8)
    assert kuzmin_landau_bound(2) >= 4 / math.pi


def test_kuzmin_landau_domain():
    with pytest.raises(ValueError):
        kuzmin_landau_bound(1.5)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.002, max_value=0.5), st.integers(-5, 5), st.integers(1, 3000))
def test_linear_phase_against_brute(dist, k, N):
    theta = k + dist
    phase = PhaseFunction.polynomial([0.0, theta])
    assert brute_abs(phase, 1, N) <= kuzmin_landau_bound(max(2.0, 1 / dist))


# --- order 2 ---------------------------------------------------------------


def test_second_derivative_worked_values():
    cg = second_derivative_bound(10, 4, 9, SecondDerivVariant.CHENG_GRAHAM_CORRECTED)
    assert cg == pytest.approx(2 * 4.5 * (2 * 3 / math.sqrt(math.pi) + 1), rel=1e-8)
    assert cg == pytest.approx(39.466, abs=5e-4)
    pt = second_derivative_bound(1, 4, 9, SecondDerivVariant.PLATT_TRUDGIAN)
    assert pt == pytest.approx(4 * (2 * math.sqrt(9 / math.pi) + 0.5) + 1, rel=1e-8)
    assert pt == pytest.approx(16.541, abs=5e-4)


def test_second_derivative_zeta_log_window():
    phase = PhaseFunction.zeta_log(1e5)
    env = derivative_envelope(phase, 1000, 101, 2)
    V = env.W / env.lam
    s = brute_abs(phase, 1000, 101)
    for variant in SecondDerivVariant:
        assert s <= second_derivative_bound(101, V, env.W, variant)


def test_second_derivative_domain():
    with pytest.raises(ValueError):
        second_derivative_bound(10, 9, 9)
    with pytest.raises(ValueError):
        second_derivative_bound(10, 0.5, 0.9)


@given(st.integers(1, 10**6), st.floats(1.01, 1e9), st.floats(1.0, 100.0))
def test_platt_trudgian_not_larger_for_L_ge_1(L, W, lam):
    V = W / lam
    assume(V < W)
    pt = second_derivative_bound(L, V, W, SecondDerivVariant.PLATT_TRUDGIAN)
    cg = second_derivative_bound(L, V, W, SecondDerivVariant.CHENG_GRAHAM_CORRECTED)
    assert pt <= cg


# --- order 3 ---------------------------------------------------------------


def test_alpha3_large_W_independent():
    with mpmath.workdps(30):
        W, lam, eta = mpmath.mpf(10) ** 9, 1, 1
        w = W ** (-mpmath.mpf(1) / 3)
        ref = 1 / eta + 32 * lam / (15 * mpmath.sqrt(mpmath.pi)) * mpmath.sqrt(eta + w) + 2 * lam * eta * w + 2 * lam * w**2
    c = third_order_coeffs(1e9, 1.0, 1.0)
    assert c.alpha3 == pytest.approx(float(ref), rel=1e-13)
    assert 2.20 < c.alpha3 < 2.21


def test_beta3_tilde_independent():
    with mpmath.workdps(30):
        ref = 64 / (3 * mpmath.sqrt(mpmath.pi)) + 4
    assert beta3_tilde(1.0) == pytest.approx(float(ref), rel=1e-14)
    assert beta3_tilde(1.0) == pytest.approx(16.036, abs=1e-3)


@given(Ws, lams, etas)
def test_third_order_tildes_dominate(W, lam, eta):
    c = third_order_coeffs(W, lam, eta)
    assert c.alpha3 <= c.alpha3_tilde * (1 + 1e-14)
    assert c.beta3 <= c.beta3_tilde * (1 + 1e-14)


@given(Ws, lams, etas)
def test_third_bound_single_term(W, lam, eta):
    env = DerivEnvelope(3, 1, 1, W, lam)
    assert third_derivative_bound(1, env, eta) >= 1


def test_third_derivative_zeta_log_window():
    phase = PhaseFunction.zeta_log(1e4)
    env = derivative_envelope(phase, 50, 31, 3)
    assert env.W > 1
    assert brute_abs(phase, 50, 31) <= third_derivative_bound(31, env, 1.0)


def test_third_envelope_order_checked():
    with pytest.raises(ValueError):
        third_derivative_bound(10, DerivEnvelope(4, 1, 10, 5.0, 1.0), 1.0)


# --- order 4 ---------------------------------------------------------------


def test_beta4_example_recomputed():
    with mpmath.workdps(30):
        ref = mpmath.mpf(18) / 10 * mpmath.sqrt(64 / (3 * mpmath.sqrt(mpmath.pi)) + 4)
    _, _, b4 = fourth_order_tildes(1.0, 1.0, 1.0, Beta4Mode.PROOF_18_10)
    assert b4 == pytest.approx(float(ref), rel=1e-14)
    assert b4 == pytest.approx(7.2081, abs=1e-4)


@given(lams, etas, etas)
def test_beta4_mode_ratio_is_two(lam, e4, e3):
    _, _, a = fourth_order_tildes(lam, e4, e3, Beta4Mode.PROOF_18_10)
    _, _, b = fourth_order_tildes(lam, e4, e3, Beta4Mode.STATEMENT_18_20)
    assert a / b == pytest.approx(2.0, rel=1e-15)


@given(Ws, lams, etas, etas)
def test_fourth_tildes_dominate(W, lam, e4, e3):
    c = fourth_order_coeffs(W, lam, e4, e3)
    assert c.alpha4 <= c.alpha4_tilde * (1 + 1e-14)
    assert c.gamma4 <= c.gamma4_tilde * (1 + 1e-14)


@given(Ws, lams, etas, etas, etas)
def test_fourth_and_fifth_single_term(W, lam, e3, e4, e5):
    eta = EtaVector(e3, e4, e5)
    for mode in Beta4Mode:
        assert fourth_derivative_bound(1, DerivEnvelope(4, 1, 1, W, lam), eta, mode) >= 1
        assert fifth_derivative_bound(1, DerivEnvelope(5, 1, 1, W, lam), eta, mode) >= 1


def test_fourth_derivative_zeta_log_window():
    t, a, L = 1e6, 200, 2000
    phase = PhaseFunction.zeta_log(t)
    env = derivative_envelope(phase, a, L, 4)
    assert env.W > 1
    s = brute_abs(phase, a, L)
    for e4 in (0.5, 1.0, 2.0):
        assert s <= fourth_derivative_bound(L, env, EtaVector(1.0, e4, 1.0))


# --- order 5 ---------------------------------------------------------------


def test_fifth_order_prefactors():
    for q, frac in ((1 / 14, Fraction(392, 435)), (-1 / 14, Fraction(392, 351)),
                    (-1 / 7, Fraction(98, 78)), (-3 / 14, Fraction(392, 275))):
        assert summation_prefactor(q) == pytest.approx(float(frac), rel=1e-15)


def test_alpha5_independent_evaluation():
    W, e = 1e9, EtaVector((15 * math.sqrt(math.pi) / 32) ** (2 / 3), (91 / (72 * math.sqrt(23))) ** (6 / 7), 2.2)
    lam = 1.32**5
    with mpmath.workdps(40):
        sp = mpmath.sqrt(mpmath.pi)
        e3, e4, e5 = (mpmath.mpf(x) for x in (e.eta3, e.eta4, e.eta5))
        a3t = 1 / e3 + 32 * lam / (15 * sp) * mpmath.sqrt(e3 + 1) + 2 * lam * e3 + 2 * lam
        a4t = 1 / e4 + mpmath.mpf(72) / 91 * mpmath.sqrt(a3t) * (e4 + 1) ** (mpmath.mpf(1) / 6)
        ref = 1 / e5 + mpmath.mpf(392) / 435 * mpmath.sqrt(a4t) * (e5 + mpmath.mpf(W) ** (-mpmath.mpf(1) / 15)) ** (
            mpmath.mpf(1) / 14)
    c = fifth_order_coeffs(W, lam, e)
    assert c.alpha5 > 0
    assert c.alpha5 == pytest.approx(float(ref), rel=1e-12)


def test_fifth_derivative_pipeline_block():
    t = 1e7
    x = 60 * t**0.2
    a, b = math.ceil(x), math.floor(1.32 * x)
    phase = PhaseFunction.zeta_log(t)
    env = derivative_envelope(phase, a, b - a + 1, 5)
    eta = EtaVector((15 * math.sqrt(math.pi) / 32) ** (2 / 3), (91 / (72 * math.sqrt(23))) ** (6 / 7), 2.2)
    assert brute_abs(phase, a, b - a + 1) <= fifth_derivative_bound(b - a + 1, env, eta)


@given(st.integers(1, 10**6), Ws, lams)
def test_fifth_square_nondecreasing_in_L(L, W, lam):
    # partial summation takes the bound at the full block length
    assert fifth_derivative_square(L, W, lam, ETA) <= fifth_derivative_square(L + 1, W, lam, ETA)
    assert fourth_derivative_square(L, W, lam, ETA) <= fourth_derivative_square(L + 1, W, lam, ETA)
    assert third_derivative_square(L, W, lam, 1.0) <= third_derivative_square(L + 1, W, lam, 1.0)


def test_envelope_argument_errors():
    with pytest.raises(ValueError):
        third_order_coeffs(1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        third_order_coeffs(2.0, 0.5, 1.0)
    with pytest.raises(ValueError):
        fifth_order_coeffs(2.0, 1.0, EtaVector(1, 1, 1), "bogus")
    with pytest.raises(ValueError):
        EtaVector(1.0, 0.0, 1.0)


# --- weighted power sums -------------------------------------------------------


def test_weighted_power_sum_small_cases():
    assert weighted_power_sum_bound(1, 0.0) == pytest.approx(0.5, rel=1e-8)
    assert weighted_power_sum_brute(1, 0.0) == 0.0
    assert weighted_power_sum_brute(100, 1 / 14) <= weighted_power_sum_bound(100, 1 / 14)
    assert weighted_power_sum_bound(100, 1 / 14) == pytest.approx(100 ** (15 / 14) * 196 / 435, rel=1e-8)
    assert weighted_power_sum_brute(10**4, -1 / 3) <= 0.9 * (10**4) ** (2 / 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5000), st.floats(min_value=-0.95, max_value=0.95))
def test_weighted_power_sum_property(M, q):
    assert weighted_power_sum_brute(M, q) <= weighted_power_sum_bound(M, q)


def test_weighted_power_sum_domain():
    with pytest.raises(ValueError):
        weighted_power_sum_bound(10, 1.0)
    with pytest.raises(ValueError):
        weighted_power_sum_bound(0, 0.5)
