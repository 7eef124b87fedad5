"""Independent reference computations used to check the explicit bounds.

None of these routines call into the bound formulas.  Each one returns an
:class:`OracleResult` whose ``error_bound`` is a rigorous-in-spirit
estimate of its own numerical error, so comparisons of the form
``value + error_bound <= claimed_bound`` cannot pass by accident.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exp_sums import (
    Beta4Mode,
    EtaVector,
    alpha3_tilde,
    beta3_tilde,
    fourth_order_tildes,
)
from .phase_models import PhaseFunction

MAX_BRUTE_TERMS = 10**8
CHUNK = 1 << 20
EPS_LD = float(np.finfo(np.longdouble).eps)
EPS_D = 2.0**-53
TWO_PI_LD = 2 * np.longdouble("3.14159265358979323846264338327950288")
# per-term slack for the float64 cos/sin of a reduced phase, plus accumulation
TERM_SLACK = 2.0**-50

# B_2 .. B_14 as exact rationals
BERNOULLI = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
}


@dataclass(frozen=True)
class OracleResult:
    value: complex | float
    error_bound: float
    terms_used: int
    log_value: float | None = None

    @property
    def upper(self) -> float:
        """abs(value) + error_bound."""
        return abs(self.value) + self.error_bound


# --- exponential sums ----------------------------------------------------


def _phase_values(phase: PhaseFunction, n: np.ndarray) -> tuple[np.ndarray, float]:
    """Phases reduced mod 1 and a bound on the total absolute phase error."""
    if phase.kind == "zeta_log":
        nl = n.astype(np.longdouble)
        theta = -np.longdouble(phase.t) * np.log(nl) / TWO_PI_LD
        err = np.abs(theta) * (8 * EPS_LD)
    elif phase.kind == "polynomial":
        nl = n.astype(np.longdouble)
        theta = np.zeros_like(nl)
        scale = np.zeros_like(nl)
        for c in reversed(phase.coefficients):
            theta = theta * nl + np.longdouble(c)
            scale = scale * nl + np.longdouble(abs(c))
        err = scale * (2 * (len(phase.coefficients) + 1) * EPS_LD)
    else:
        theta = np.asarray(phase(n.astype(float)), dtype=np.longdouble)
        err = np.abs(theta) * 4 * EPS_D
    frac = theta - np.floor(theta)
    return frac.astype(float), float(np.sum(err, dtype=np.float64))


def exp_sum_brute(phase: PhaseFunction, n_start: int, L: int) -> OracleResult:
    """S = sum_{n=n_start}^{n_start+L-1} e(f(n)) summed directly."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    if L > MAX_BRUTE_TERMS:
        raise ValueError(f"L={L} exceeds the brute-force cap {MAX_BRUTE_TERMS}")
    total = 0j
    phase_err = 0.0
    for lo in range(n_start, n_start + L, CHUNK):
        hi = min(lo + CHUNK, n_start + L)
        n = np.arange(lo, hi, dtype=np.int64)
        frac, err = _phase_values(phase, n)
        total += complex(np.sum(np.exp(2j * np.pi * frac)))
        phase_err += err
    error = 2 * math.pi * phase_err + L * TERM_SLACK
    return OracleResult(total, error, L)


def exp_sum_prefix_max(phase: PhaseFunction, n_start: int, L: int) -> OracleResult:
    """max over 1 <= D <= L of |sum_{n_start}^{n_start+D-1} e(f(n))|."""
    if L < 1 or L > MAX_BRUTE_TERMS:
        raise ValueError(f"L must lie in [1, {MAX_BRUTE_TERMS}], got {L}")
    n = np.arange(n_start, n_start + L, dtype=np.int64)
    frac, err = _phase_values(phase, n)
    prefix = np.cumsum(np.exp(2j * np.pi * frac))
    return OracleResult(float(np.max(np.abs(prefix))), 2 * math.pi * err + L * TERM_SLACK, L)


def dirichlet_block_brute(t: float, a: int, b: int) -> OracleResult:
    """sum_{n=a}^{b} n^{-1-it}."""
    if b < a:
        return OracleResult(0j, 0.0, 1)
    n = np.arange(a, b + 1, dtype=np.int64)
    frac, err = _phase_values(PhaseFunction.zeta_log(t), n)
    w = 1.0 / n.astype(float)
    total = complex(np.sum(w * np.exp(2j * np.pi * frac)))
    # phase error weighted by 1/n is at most the unweighted one over a
    return OracleResult(total, 2 * math.pi * err / a + (b - a + 1) * TERM_SLACK / a, b - a + 1)


# --- zeta(1+it) by Euler-Maclaurin --------------------------------------


def _dirichlet_partial(s: complex, N: int) -> tuple[complex, float]:
    """sum_{n=1}^{N} n^{-s} for Re s = sigma, with a rounding error bound."""
    sigma, t = s.real, s.imag
    total = 0j
    err = 0.0
    for lo in range(1, N + 1, CHUNK):
        hi = min(lo + CHUNK, N + 1)
        n = np.arange(lo, hi, dtype=np.int64)
        ln = np.log(n.astype(np.longdouble))
        theta = -np.longdouble(t) * ln / TWO_PI_LD
        frac = (theta - np.floor(theta)).astype(float)
        w = np.exp(-sigma * ln.astype(float))
        total += complex(np.sum(w * np.exp(2j * np.pi * frac)))
        err += float(np.sum(w * (2 * math.pi * np.abs(theta).astype(float) * 8 * EPS_LD + TERM_SLACK)))
    return total, err


def _em_term(s: complex, N: int, k: int) -> complex:
    """B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}."""
    poch = 1 + 0j
    for i in range(2 * k - 1):
        poch *= s + i
    return float(BERNOULLI[2 * k]) / math.factorial(2 * k) * poch * N ** (-s - 2 * k + 1)


def _n_power(s: complex, N: int) -> complex:
    """N^{-s} with the oscillating factor reduced in extended precision."""
    ln = np.log(np.longdouble(N))
    theta = -np.longdouble(s.imag) * ln / TWO_PI_LD
    frac = float(theta - np.floor(theta))
    return N ** (-s.real) * cmath.exp(2j * math.pi * frac)


def zeta_em(s: complex, N: int, tol: float = 1e-10) -> OracleResult:
    """zeta(s) by Euler-Maclaurin with cutoff N, for Re s > 0 and s != 1."""
    sigma = s.real
    if N < 1:
        raise ValueError("N must be >= 1")
    partial, err = _dirichlet_partial(s, N - 1)
    nps = _n_power(s, N)
    value = partial + N * nps / (s - 1) + 0.5 * nps
    kmax = max(BERNOULLI) // 2 - 1
    tail = math.inf
    for k in range(1, kmax + 1):
        value += _em_term(s, N, k)
        tail = abs(s + 2 * k + 1) / (sigma + 2 * k + 1) * abs(_em_term(s, N, k + 1))
        if tail < tol:
            break
    return OracleResult(value, tail + err + 1e-15 * abs(value), N)


def zeta_direct(t: float, N: int | None = None) -> OracleResult:
    """zeta(1+it) for 3 <= |t| <= 1e8."""
    if not 3 <= abs(t) <= 1e8:
        raise ValueError(f"zeta oracle supports 3 <= |t| <= 1e8, got {t}")
    if N is None:
        N = max(math.ceil(2 * abs(t) / math.pi), 100)
    return zeta_em(complex(1.0, t), N)


# --- Gamma and chi -------------------------------------------------------

STIRLING_TERMS = 6
STIRLING_SHIFT_TO = 8.0


def log_gamma_direct(z: complex) -> tuple[complex, float]:
    """log Gamma(z) (branch irrelevant, real part exact) and an absolute error bound.

    Shift upward until Re >= 8, then the Stirling series with six terms.
    """
    n = 0
    while z.real + n < STIRLING_SHIFT_TO:
        n += 1
    w = z + n
    shift = 0j
    for k in range(n):
        zk = z + k
        if zk == 0:
            raise ValueError(f"Gamma has a pole at {z}")
        shift += cmath.log(zk)
    lg = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi)
    for k in range(1, STIRLING_TERMS + 1):
        lg += float(BERNOULLI[2 * k]) / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
    K = STIRLING_TERMS + 1
    # remainder bound with the sec^{2K}(arg w / 2) factor, arg w in (-pi/2, pi/2)
    sec2 = 1.0 / math.cos(cmath.phase(w) / 2) ** 2
    rem = abs(float(BERNOULLI[2 * K])) / (2 * K * (2 * K - 1) * abs(w) ** (2 * K - 1)) * sec2**K
    rounding = 8 * EPS_D * (abs(w) * (abs(cmath.log(w)) + 1) + abs(shift) + n)
    return lg - shift, rem + rounding


def gamma_direct(sigma: float, t: float) -> OracleResult:
    """|Gamma(sigma + it)| with its natural log; error_bound is absolute on the value."""
    if not abs(sigma) <= 10:
        raise ValueError(f"gamma oracle supports |sigma| <= 10, got {sigma}")
    if not 0.5 <= abs(t) <= 1e4:
        raise ValueError(f"gamma oracle supports 0.5 <= |t| <= 1e4, got {t}")
    lg, err = log_gamma_direct(complex(sigma, t))
    log_abs = lg.real
    value = math.exp(log_abs)
    return OracleResult(value, value * math.expm1(err), STIRLING_TERMS, log_value=log_abs)


def chi_direct(t: float) -> OracleResult:
    """|chi(1+it)| = sqrt(pi) |Gamma(-it/2)| / |Gamma((1+it)/2)|."""
    if not 1 <= abs(t) <= 1e4:
        raise ValueError(f"chi oracle supports 1 <= t <= 1e4, got {t}")
    num, e1 = log_gamma_direct(complex(0.0, -t / 2))
    den, e2 = log_gamma_direct(complex(0.5, t / 2))
    log_abs = 0.5 * math.log(math.pi) + num.real - den.real
    value = math.exp(log_abs)
    return OracleResult(value, value * math.expm1(e1 + e2 + 4 * EPS_D), 2 * STIRLING_TERMS, log_value=log_abs)


# --- Weyl-van der Corput differencing -----------------------------------


def weyl_van_der_corput_rhs(z, M: int) -> float:
    """(L+M-1)/M * (sum |z_n|^2 + 2 sum_{m<M} (1-m/M) |sum_r z_{r+m} conj(z_r)|).

    For unimodular z this is (L+M-1)(L/M + (2/M) sum (1-m/M)|S'_m|).
    """
    z = np.asarray(z, dtype=complex)
    L = len(z)
    if not 1 <= M:
        raise ValueError(f"M must be >= 1, got {M}")
    acc = 0.0
    for m in range(1, min(M, L)):
        acc += (1 - m / M) * abs(np.vdot(z[:-m], z[m:]))
    return (L + M - 1) / M * (float(np.sum(np.abs(z) ** 2)) + 2 * acc)


def weighted_power_sum_brute(M: int, q: float) -> float:
    m = np.arange(1, M + 1, dtype=float)
    return float(np.sum((1 - m / M) * m**q))


# --- re-derivation of the nested tests ----------------------------------
#
# A bound of the shape (sum_i a_i L^p_i W^r_i)(sum_j b_j L^u_j W^v_j) is held
# as a list of monomials (coeff, L-power, W-power) per factor.


def _expand_sqrt(left, right):
    """sqrt-split the product of two monomial sums: sqrt(sum x) <= sum sqrt(x)."""
    out = []
    for a, p, r in left:
        for b, u, v in right:
            out.append((math.sqrt(a * b), (p + u) / 2, (r + v) / 2))
    return out


def _difference_step(inner_mono, L: float, W: float, eta: float, k: int) -> float:
    """Apply the differencing inequality for order k with M in [eta W^{1/(2^(k-1)-1)}, that + 1].

    The differenced sum S'_m has the inner test with W -> W/m, so a
    monomial c L^a W^b becomes c L^a W^b m^{-b}.  Summing against the
    weight (1 - m/M) uses sum (1-m/M) m^q <= M^{q+1}/((q+1)(q+2)).
    Powers of M are then bounded by the end of the M-range that makes
    them largest.
    """
    m_lo = eta * W ** (1.0 / (2 ** (k - 1) - 1))
    m_hi = m_lo + 1.0
    inner = L / m_lo
    for c, a, b in inner_mono:
        q = -b
        if not -1 < q < 1:
            raise ValueError(f"power {q} outside the weighted-sum range")
        pref = 2.0 / ((q + 1) * (q + 2))
        mq = m_hi**q if q > 0 else m_lo**q
        inner += pref * c * L**a * W**b * mq
    return (L + m_lo) * inner


def rederive_fourth_square(L: float, W4: float, lambda4: float, eta: EtaVector) -> float:
    """|S|^2 bound for order 4 rebuilt from the third-order test and differencing.

    The derivation produces the 18/10 constant in beta4, so this matches
    the closed form only in the proof_18_10 mode.
    """
    a3t = alpha3_tilde(lambda4, eta.eta3)
    b3t = beta3_tilde(eta.eta3)
    left = [(1.0, 1.0, -1.0 / 3.0), (eta.eta3, 0.0, 0.0)]
    right = [(a3t, 1.0, 0.0), (b3t, 0.0, 2.0 / 3.0)]
    return _difference_step(_expand_sqrt(left, right), L, W4, eta.eta4, 4)


def rederive_fifth_square(L: float, W5: float, lambda5: float, eta: EtaVector,
                          beta4_mode=Beta4Mode.PROOF_18_10) -> float:
    """|S|^2 bound for order 5 rebuilt from the fourth-order test and differencing."""
    a4t, g4t, b4 = fourth_order_tildes(lambda5, eta.eta4, eta.eta3, beta4_mode)
    left = [(1.0, 1.0, -1.0 / 7.0), (eta.eta4, 0.0, 0.0)]
    right = [(a4t, 1.0, 0.0), (g4t, 0.5, 2.0 / 7.0), (b4, 0.0, 3.0 / 7.0)]
    return _difference_step(_expand_sqrt(left, right), L, W5, eta.eta5, 5)
