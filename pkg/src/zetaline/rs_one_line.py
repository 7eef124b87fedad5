"""Riemann-Siegel style decomposition of zeta(1+it).

|zeta(1+it)| <= |sum_{n<=n1} n^{-1-it}| + g(t)/sqrt(t) |sum_{n<=n1} n^{it}| + R(t)
with n1 = floor(sqrt(t/2pi)).  Bounding both sums trivially gives the
"half log" bound 1/2 log t + O(1) used for t >= 47.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .breakdown import BoundBreakdown
from .gamma_chi import g_function
from .rounding import up

EULER_GAMMA = float(np.euler_gamma)
SQRT_2PI = math.sqrt(2 * math.pi)

# Literature bound |zeta(1+it)| <= log t, cited and not re-derived.
LOG_BOUND_FROM = 3.0
# Additive constant of the half-log bound and where it starts to hold.
TRIANGLE_CONSTANT = 1.93
TRIANGLE_FROM = 47.0


def _check_t(t: float):
    if not (t > 0 and math.isfinite(t)):
        raise ValueError(f"t must be positive and finite, got {t}")


def rs_n1(t: float) -> int:
    """floor(sqrt(t / 2pi)), with an extended-precision check of the floor."""
    _check_t(t)
    with mpmath.workdps(50):
        a2 = mpmath.mpf(t) / (2 * mpmath.pi)
        n = int(mpmath.floor(mpmath.sqrt(a2)))
        while n * n > a2:
            n -= 1
        while (n + 1) ** 2 <= a2:
            n += 1
    return n


def rs_remainder_parts(t: float) -> tuple[float, float, float]:
    """The t^{-1/2}, t^{-1} and t^{-3/2} pieces of R(t)."""
    _check_t(t)
    g = g_function(t)
    p1 = (math.sqrt(math.pi / 2) + g / 2) / math.sqrt(t)
    p2 = (9 * math.sqrt(math.pi / 2) + g / math.sqrt(math.pi * (3 - 2 * math.log(2)))) / t
    p3 = (968 * math.pi**1.5 + 242 * math.pi * g) / 700 / t**1.5
    return p1, p2, p3


def rs_remainder(t: float) -> float:
    return up(sum(rs_remainder_parts(t)))


def rs_remainder_from_pieces(t: float) -> float:
    """R(t) reassembled from the separate bounds on the two Siegel pieces.

    The first piece carries the C_0, C_1 and RS_1 estimates at sigma = 1,
    the second the same estimates at sigma = 0, scaled by the chi bound.
    Used as a cross-check of the closed form.
    """
    _check_t(t)
    g = g_function(t)
    rt = math.sqrt(t)
    first = (SQRT_2PI / 2 + 968 * math.pi**1.5 / (700 * t) + 9 * SQRT_2PI / (2 * rt)) / rt
    second = 0.5 + 1 / (math.sqrt(math.pi * (3 - 2 * math.log(2))) * rt) + 242 * math.pi / (700 * t)
    return first + g / rt * second


def harmonic_sum_bound(N: int) -> float:
    """sum_{n<=N} 1/n <= log N + gamma + 1/N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return up(math.log(N) + EULER_GAMMA + 1.0 / N)


def partial_summation_reduce(max_partial: float, N: int) -> float:
    """Bound on |sum_{n=N+1}^{N+L} a_n / n| given max prefix |sum a_n| <= max_partial."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if max_partial < 0:
        raise ValueError("max_partial must be nonnegative")
    return max_partial / (N + 1)


@dataclass(frozen=True)
class OneLineDecomposition:
    t: float
    n1: int
    main_sum_bound: float
    conjugate_sum_bound: float
    chi_factor: float
    remainder: float

    @property
    def total(self) -> float:
        return up(self.main_sum_bound + self.chi_factor * self.conjugate_sum_bound + self.remainder)


def one_line_decomposition(t: float, main_sum_bound: float | None = None,
                           conjugate_sum_bound: float | None = None) -> OneLineDecomposition:
    """Assemble the decomposition; missing sum bounds default to the triangle inequality."""
    _check_t(t)
    n1 = rs_n1(t)
    if main_sum_bound is None:
        main_sum_bound = harmonic_sum_bound(n1) if n1 >= 1 else 0.0
    if conjugate_sum_bound is None:
        conjugate_sum_bound = float(n1)
    return OneLineDecomposition(
        t=t,
        n1=n1,
        main_sum_bound=main_sum_bound,
        conjugate_sum_bound=conjugate_sum_bound,
        chi_factor=g_function(t) / math.sqrt(t),
        remainder=rs_remainder(t),
    )


def triangle_excess(t: float) -> float:
    """Additive part of the half-log bound at t (everything except 1/2 log t)."""
    if not t > 2 * math.pi:
        raise ValueError(f"half-log bound needs t > 2pi, got {t}")
    rt = math.sqrt(t)
    val = (
        EULER_GAMMA
        + SQRT_2PI / (rt - SQRT_2PI)
        - 0.5 * math.log(2 * math.pi)
        + math.exp(5 / (3 * t * t) + math.pi / (6 * t))
        + rs_remainder(t)
    )
    return up(val)


def triangle_one_line_bound(t: float) -> BoundBreakdown:
    """Half-log bound 1/2 log t + excess(t); valid for every t' >= t since the excess decreases."""
    excess = triangle_excess(t)
    rt = math.sqrt(t)
    return BoundBreakdown(
        leading_coeff=0.5,
        additive_constant=excess,
        valid_from=t,
        label="half_log",
        components={
            "euler_gamma": EULER_GAMMA,
            "floor_correction": SQRT_2PI / (rt - SQRT_2PI),
            "minus_half_log_2pi": -0.5 * math.log(2 * math.pi),
            "chi_sum": math.exp(5 / (3 * t * t) + math.pi / (6 * t)),
            "remainder": rs_remainder(t),
        },
    )


def log_bound(t: float) -> BoundBreakdown:
    if t < LOG_BOUND_FROM:
        raise ValueError(f"log t bound needs t >= {LOG_BOUND_FROM}, got {t}")
    return BoundBreakdown(leading_coeff=1.0, additive_constant=0.0, valid_from=LOG_BOUND_FROM, label="log")


def half_log_bound() -> BoundBreakdown:
    """1/2 log t + 1.93 for t >= 47."""
    return BoundBreakdown(
        leading_coeff=0.5, additive_constant=TRIANGLE_CONSTANT, valid_from=TRIANGLE_FROM, label="half_log"
    )
