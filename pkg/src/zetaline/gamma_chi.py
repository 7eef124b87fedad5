"""Explicit envelopes for |Gamma(sigma + it)| and |chi(1 + it)|.

Magnitudes decay like exp(-pi t / 2), so every envelope also carries its
natural logarithm; the plain values underflow to zero past t ~ 450.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rounding import down, up

LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _check(sigma: float, t: float, need_positive_sigma: bool = True):
    if need_positive_sigma and not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")


def log_xi1(sigma: float, t: float) -> float:
    _check(sigma, t)
    return -sigma / (12 * t * t) - math.pi / (24 * t) - sigma**3 / (3 * t * t)


def log_xi2(sigma: float, t: float) -> float:
    _check(sigma, t)
    return (sigma - 0.5) * sigma * sigma / (2 * t * t) + sigma / (12 * t * t) + math.pi / (24 * t)


def xi1(sigma: float, t: float) -> float:
    return math.exp(log_xi1(sigma, t))


def xi2(sigma: float, t: float) -> float:
    return math.exp(log_xi2(sigma, t))


@dataclass(frozen=True)
class GammaEnvelope:
    sigma: float
    t: float
    log_lower: float
    log_upper: float

    @property
    def lower(self) -> float:
        return math.exp(self.log_lower)

    @property
    def upper(self) -> float:
        return math.exp(self.log_upper)

    def contains_log(self, log_value: float, tol: float = 0.0) -> bool:
        return self.log_lower <= log_value - tol and log_value + tol <= self.log_upper


def _log_base(sigma: float, t: float) -> float:
    return LOG_SQRT_2PI - math.pi * t / 2 + (sigma - 0.5) * math.log(t)


def gamma_magnitude_envelope(sigma: float, t: float) -> GammaEnvelope:
    """Bracket |Gamma(sigma + it)| for sigma > 0; negative t is handled via |t|."""
    t = abs(t)
    _check(sigma, t)
    base = _log_base(sigma, t)
    return GammaEnvelope(sigma, t, down(base + log_xi1(sigma, t)) - 1e-12, up(base + log_xi2(sigma, t)) + 1e-12)


def shift_count(sigma: float) -> int:
    """Smallest positive integer n with sigma + n > 0."""
    n = max(1, math.floor(-sigma) + 1)
    while sigma + n <= 0:
        n += 1
    while n > 1 and sigma + n - 1 > 0:
        n -= 1
    return n


def shifted_gamma_envelope(sigma: float, t: float) -> GammaEnvelope:
    """Bracket |Gamma(sigma + it)| for sigma <= 0 by shifting to sigma + n > 0."""
    if not sigma <= 0:
        raise ValueError(f"shifted envelope is for sigma <= 0, got {sigma}")
    _check(sigma, t, need_positive_sigma=False)
    n = shift_count(sigma)
    factors = [-sigma - l + t for l in range(n)]
    if min(factors) <= 0:
        raise ValueError(f"t={t} too small for the shifted lower envelope at sigma={sigma}")
    inner = gamma_magnitude_envelope(sigma + n, t)
    log_lo = inner.log_lower - sum(math.log(f) for f in factors)
    log_hi = inner.log_upper - n * math.log(t)
    return GammaEnvelope(sigma, t, down(log_lo) - 1e-12, up(log_hi) + 1e-12)


def g_function(t: float) -> float:
    """sqrt(2 pi) exp(5/(3t^2) + pi/(6t)); tends to sqrt(2 pi) as t grows."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    return math.sqrt(2 * math.pi) * math.exp(5 / (3 * t * t) + math.pi / (6 * t))


def chi_one_line_bound(t: float) -> float:
    """Upper bound g(t)/sqrt(t) for |chi(1 + it)|."""
    return up(g_function(t) / math.sqrt(t))
