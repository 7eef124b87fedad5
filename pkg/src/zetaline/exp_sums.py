"""Explicit derivative tests for exponential sums, orders 1 through 5.

Orders 3-5 are the explicit AB, A^2B and A^3B processes: each one is
obtained from the previous order through a Weyl-van der Corput
differencing step, and the coefficients of the inner test are replaced by
their W-free majorants (the "tilde" coefficients).  The public ``*_bound``
functions return an upper bound for |S| (not |S|^2), pushed outward by the
rounding policy in :mod:`zetaline.rounding`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .phase_models import DerivEnvelope
from .rounding import up

SQRT_PI = math.sqrt(math.pi)


class Beta4Mode(str, enum.Enum):
    """Leading rational in beta_4.

    ``proof_18_10`` follows the summation identity 2/((q+1)(q+2)) at q=-1/3;
    ``statement_18_20`` uses 18/20, half of that, as an alternative reading.
    """

    PROOF_18_10 = "proof_18_10"
    STATEMENT_18_20 = "statement_18_20"

    @property
    def factor(self) -> float:
        return 18 / 10 if self is Beta4Mode.PROOF_18_10 else 18 / 20


class SecondDerivVariant(str, enum.Enum):
    CHENG_GRAHAM_CORRECTED = "cheng_graham_corrected"
    PLATT_TRUDGIAN = "platt_trudgian"


@dataclass(frozen=True)
class EtaVector:
    eta3: float
    eta4: float
    eta5: float

    def __post_init__(self):
        for name in ("eta3", "eta4", "eta5"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class ThirdOrderCoeffs:
    alpha3: float
    beta3: float
    alpha3_tilde: float
    beta3_tilde: float


@dataclass(frozen=True)
class FourthOrderCoeffs:
    alpha4: float
    gamma4: float
    beta4: float
    alpha4_tilde: float
    gamma4_tilde: float
    beta4_mode: Beta4Mode


@dataclass(frozen=True)
class FifthOrderCoeffs:
    alpha5: float
    tau5: float
    gamma5: float
    omega5: float
    beta5: float


def summation_prefactor(q: float) -> float:
    """2/((q+1)(q+2)): the constant produced by the weighted power-sum bound."""
    return 2.0 / ((q + 1.0) * (q + 2.0))


def _check_envelope_args(W: float, lam: float, eta: float | None = None):
    if not W > 1:
        raise ValueError(f"derivative test needs W > 1, got {W}")
    if not lam >= 1:
        raise ValueError(f"derivative test needs lambda >= 1, got {lam}")
    if eta is not None and not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")


# --- order 1 and 2 -------------------------------------------------------


def kuzmin_landau_bound(U: float) -> float:
    """(2/pi) U, valid when ||f'|| >= 1/U and f' is monotone."""
    if not U >= 2:
        raise ValueError(f"Kuzmin-Landau needs U >= 2 (since ||x|| <= 1/2), got {U}")
    return up(2.0 / math.pi * U)


def second_derivative_bound(
    L: int,
    V: float,
    W: float,
    variant: SecondDerivVariant | str = SecondDerivVariant.CHENG_GRAHAM_CORRECTED,
) -> float:
    """Second-derivative test under 1/W <= |f''| <= 1/V on an interval of L integers."""
    variant = SecondDerivVariant(variant)
    if not V < W:
        raise ValueError(f"second derivative test needs V < W (V={V}, W={W})")
    if not W > 1:
        raise ValueError(f"second derivative test needs W > 1, got {W}")
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    root = 2.0 * math.sqrt(W / math.pi)
    if variant is SecondDerivVariant.CHENG_GRAHAM_CORRECTED:
        value = 2.0 * (L / V + 2.0) * (root + 1.0)
    else:
        value = 2.0 * ((L - 1) / V + 2.0) * (root + 0.5) + 1.0
    return up(value)


# --- order 3 -------------------------------------------------------------


def alpha3_tilde(lambda3: float, eta3: float) -> float:
    return (
        1.0 / eta3
        + 32.0 * lambda3 / (15.0 * SQRT_PI) * math.sqrt(eta3 + 1.0)
        + 2.0 * lambda3 * eta3
        + 2.0 * lambda3
    )


def beta3_tilde(eta3: float) -> float:
    return 64.0 / (3.0 * SQRT_PI * math.sqrt(eta3)) + 4.0


def third_order_coeffs(W3: float, lambda3: float, eta3: float) -> ThirdOrderCoeffs:
    _check_envelope_args(W3, lambda3, eta3)
    w13 = W3 ** (-1.0 / 3.0)
    alpha3 = (
        1.0 / eta3
        + 32.0 * lambda3 / (15.0 * SQRT_PI) * math.sqrt(eta3 + w13)
        + 2.0 * lambda3 * eta3 * w13
        + 2.0 * lambda3 * w13 * w13
    )
    beta3 = 64.0 / (3.0 * SQRT_PI * math.sqrt(eta3)) + 4.0 * w13
    return ThirdOrderCoeffs(alpha3, beta3, alpha3_tilde(lambda3, eta3), beta3_tilde(eta3))


def third_derivative_square(L: int, W3: float, lambda3: float, eta3: float) -> float:
    """Unrounded bound for |S|^2 from the third-derivative test."""
    c = third_order_coeffs(W3, lambda3, eta3)
    return (L * W3 ** (-1.0 / 3.0) + eta3) * (c.alpha3 * L + c.beta3 * W3 ** (2.0 / 3.0))


def third_derivative_bound(L: int, env: DerivEnvelope, eta3: float) -> float:
    if env.k != 3:
        raise ValueError(f"third derivative test needs a k=3 envelope, got k={env.k}")
    return up(math.sqrt(third_derivative_square(L, env.W, env.lam, eta3)))


# --- order 4 -------------------------------------------------------------


def fourth_order_coeffs(
    W4: float,
    lambda4: float,
    eta4: float,
    eta3: float,
    beta4_mode: Beta4Mode | str = Beta4Mode.PROOF_18_10,
) -> FourthOrderCoeffs:
    """Coefficients of the fourth-derivative test.

    The inner third-order majorants are evaluated with lambda3 := lambda4,
    since the differenced phase f(x+m) - f(x) inherits the outer ratio.
    """
    beta4_mode = Beta4Mode(beta4_mode)
    _check_envelope_args(W4, lambda4, eta4)
    if not eta3 > 0:
        raise ValueError(f"eta3 must be positive, got {eta3}")
    a3t = alpha3_tilde(lambda4, eta3)
    b3t = beta3_tilde(eta3)
    w17 = W4 ** (-1.0 / 7.0)
    pa, pg = summation_prefactor(1 / 6), summation_prefactor(-1 / 6)  # 72/91, 72/55
    alpha4 = 1.0 / eta4 + pa * math.sqrt(a3t) * (eta4 + w17) ** (1.0 / 6.0)
    gamma4 = pg * math.sqrt(b3t) * eta4 ** (-1.0 / 6.0) + math.sqrt(eta3 * a3t) * w17
    beta4 = beta4_mode.factor * math.sqrt(b3t * eta3) * eta4 ** (-1.0 / 3.0)
    alpha4_t, gamma4_t, _ = fourth_order_tildes(lambda4, eta4, eta3, beta4_mode)
    return FourthOrderCoeffs(alpha4, gamma4, beta4, alpha4_t, gamma4_t, beta4_mode)


def fourth_order_tildes(
    lambda4: float, eta4: float, eta3: float, beta4_mode=Beta4Mode.PROOF_18_10
) -> tuple[float, float, float]:
    """W-free majorants (alpha4~, gamma4~) together with beta4, which has no W."""
    beta4_mode = Beta4Mode(beta4_mode)
    a3t = alpha3_tilde(lambda4, eta3)
    b3t = beta3_tilde(eta3)
    alpha4_t = 1.0 / eta4 + summation_prefactor(1 / 6) * math.sqrt(a3t) * (eta4 + 1.0) ** (1.0 / 6.0)
    gamma4_t = summation_prefactor(-1 / 6) * math.sqrt(b3t) * eta4 ** (-1.0 / 6.0) + math.sqrt(eta3 * a3t)
    beta4 = beta4_mode.factor * math.sqrt(b3t * eta3) * eta4 ** (-1.0 / 3.0)
    return alpha4_t, gamma4_t, beta4


def fourth_derivative_square(
    L: int, W4: float, lambda4: float, eta: EtaVector, beta4_mode=Beta4Mode.PROOF_18_10
) -> float:
    c = fourth_order_coeffs(W4, lambda4, eta.eta4, eta.eta3, beta4_mode)
    return (L * W4 ** (-1.0 / 7.0) + eta.eta4) * (
        c.alpha4 * L + c.gamma4 * math.sqrt(L) * W4 ** (2.0 / 7.0) + c.beta4 * W4 ** (3.0 / 7.0)
    )


def fourth_derivative_bound(
    L: int, env: DerivEnvelope, eta: EtaVector, beta4_mode=Beta4Mode.PROOF_18_10
) -> float:
    if env.k != 4:
        raise ValueError(f"fourth derivative test needs a k=4 envelope, got k={env.k}")
    return up(math.sqrt(fourth_derivative_square(L, env.W, env.lam, eta, beta4_mode)))


# --- order 5 -------------------------------------------------------------


def fifth_order_coeffs(
    W5: float, lambda5: float, eta: EtaVector, beta4_mode=Beta4Mode.PROOF_18_10
) -> FifthOrderCoeffs:
    """Coefficients of the fifth-derivative test (fourth-order tildes at lambda4 := lambda5)."""
    _check_envelope_args(W5, lambda5, eta.eta5)
    a4t, g4t, b4 = fourth_order_tildes(lambda5, eta.eta4, eta.eta3, beta4_mode)
    e4, e5 = eta.eta4, eta.eta5
    w115 = W5 ** (-1.0 / 15.0)
    alpha5 = 1.0 / e5 + summation_prefactor(1 / 14) * math.sqrt(a4t) * (e5 + w115) ** (1.0 / 14.0)
    tau5 = summation_prefactor(-1 / 14) * math.sqrt(g4t) * e5 ** (-1.0 / 14.0)
    p17 = summation_prefactor(-1 / 7)  # 98/78
    gamma5 = p17 * math.sqrt(b4) * e5 ** (-1.0 / 7.0) + math.sqrt(e4 * a4t) * w115 * w115
    omega5 = p17 * math.sqrt(e4 * g4t) * e5 ** (-1.0 / 7.0)
    beta5 = summation_prefactor(-3 / 14) * math.sqrt(e4 * b4) * e5 ** (-3.0 / 14.0)
    return FifthOrderCoeffs(alpha5, tau5, gamma5, omega5, beta5)


def fifth_derivative_square(
    L: int, W5: float, lambda5: float, eta: EtaVector, beta4_mode=Beta4Mode.PROOF_18_10
) -> float:
    c = fifth_order_coeffs(W5, lambda5, eta, beta4_mode)
    return (L * W5 ** (-1.0 / 15.0) + eta.eta5) * (
        c.alpha5 * L
        + c.tau5 * L**0.75 * W5 ** (2.0 / 15.0)
        + c.gamma5 * math.sqrt(L) * W5 ** (3.0 / 15.0)
        + c.omega5 * L**0.25 * W5 ** (1.0 / 5.0)
        + c.beta5 * W5 ** (4.0 / 15.0)
    )


def fifth_derivative_bound(
    L: int, env: DerivEnvelope, eta: EtaVector, beta4_mode=Beta4Mode.PROOF_18_10
) -> float:
    if env.k != 5:
        raise ValueError(f"fifth derivative test needs a k=5 envelope, got k={env.k}")
    return up(math.sqrt(fifth_derivative_square(L, env.W, env.lam, eta, beta4_mode)))


def weighted_power_sum_bound(M: int, q: float) -> float:
    """Upper bound M^{q+1}/((q+1)(q+2)) for sum_{m<=M} (1 - m/M) m^q, -1 < q < 1."""
    if not -1 < q < 1:
        raise ValueError(f"weighted power sum bound needs -1 < q < 1, got {q}")
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    return up(M ** (q + 1.0) / ((q + 1.0) * (q + 2.0)))
