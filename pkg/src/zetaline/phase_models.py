"""Phase functions for exponential sums and their derivative envelopes.

A phase f gives the sum S = sum_n e(f(n)) with e(x) = exp(2 pi i x).  The
k-th derivative tests need a two-sided sandwich

    1/W <= |f^(k)(x)| <= lam/W

on the real interval spanned by the summation range, which is what
:func:`derivative_envelope` computes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from .rounding import up

MAX_ORDER = 8


class EnvelopeError(ValueError):
    """The derivative vanishes somewhere on the interval."""


@dataclass(frozen=True)
class PhaseFunction:
    """A real phase f(x).

    Use the constructors :meth:`zeta_log`, :meth:`polynomial` and
    :meth:`custom` rather than building instances directly.
    """

    kind: str
    t: float | None = None
    coefficients: tuple[float, ...] = ()
    evaluator: Callable | None = field(default=None, compare=False)
    derivative: Callable | None = field(default=None, compare=False)

    @classmethod
    def zeta_log(cls, t: float) -> "PhaseFunction":
        """f(x) = -(t / 2 pi) log x, so that e(f(n)) = n^{-it}."""
        if not t > 0:
            raise ValueError(f"zeta_log phase needs t > 0, got {t}")
        return cls("zeta_log", t=float(t))

    @classmethod
    def polynomial(cls, coefficients) -> "PhaseFunction":
        """Polynomial phase, coefficients in ascending order of degree."""
        coeffs = tuple(float(c) for c in coefficients)
        if not coeffs:
            raise ValueError("polynomial phase needs at least one coefficient")
        return cls("polynomial", coefficients=coeffs)

    @classmethod
    def custom(cls, evaluator: Callable, derivative: Callable | None = None) -> "PhaseFunction":
        """Arbitrary phase.

        ``evaluator(x)`` must accept numpy arrays.  ``derivative(x, k)`` is
        only needed for envelopes, and then |f^(k)| is assumed monotone.
        """
        return cls("custom", evaluator=evaluator, derivative=derivative)

    def __call__(self, x):
        if self.kind == "zeta_log":
            return -self.t / (2 * math.pi) * np.log(x)
        if self.kind == "polynomial":
            return Polynomial(self.coefficients)(x)
        return self.evaluator(x)

    def deriv(self, x: float, k: int) -> float:
        if self.kind == "zeta_log":
            return log_phase_derivative(self.t, x, k)
        if self.kind == "polynomial":
            return float(Polynomial(self.coefficients).deriv(k)(x))
        if self.derivative is None:
            raise ValueError("custom phase has no derivative callable")
        return float(self.derivative(x, k))


def log_phase_derivative(t: float, x: float, k: int) -> float:
    """k-th derivative of -(t/2pi) log x, i.e. (-1)^k (k-1)! t / (2 pi x^k)."""
    if not (t > 0 and x > 0):
        raise ValueError(f"log phase derivative needs t > 0 and x > 0 (t={t}, x={x})")
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"derivative order must lie in [1, {MAX_ORDER}], got {k}")
    sign = -1.0 if k % 2 else 1.0
    return sign * math.factorial(k - 1) * t / (2 * math.pi * x**k)


@dataclass(frozen=True)
class DerivEnvelope:
    """Sandwich 1/W <= |f^(k)| <= lam/W on [n_start, n_start + L - 1]."""

    k: int
    n_start: int
    L: int
    W: float
    lam: float

    @property
    def n_end(self) -> int:
        return self.n_start + self.L - 1

    @property
    def lower(self) -> float:
        return 1.0 / self.W

    @property
    def upper(self) -> float:
        return self.lam / self.W


def _abs_extrema(phase: PhaseFunction, a: float, b: float, k: int) -> tuple[float, float]:
    if phase.kind == "zeta_log":
        # |f^(k)| is decreasing in x
        return abs(phase.deriv(b, k)), abs(phase.deriv(a, k))
    if phase.kind == "polynomial":
        dk = Polynomial(phase.coefficients).deriv(k)
        points = [a, b]
        if b > a:
            for root in dk.roots():
                if abs(root.imag) < 1e-12 and a < root.real < b:
                    raise EnvelopeError(f"f^({k}) vanishes at x={root.real:.6g} inside [{a}, {b}]")
            if dk.degree() >= 1:
                for root in dk.deriv().roots():
                    if abs(root.imag) < 1e-12 and a < root.real < b:
                        points.append(root.real)
        vals = [abs(float(dk(x))) for x in points]
        return min(vals), max(vals)
    va, vb = abs(phase.deriv(a, k)), abs(phase.deriv(b, k))
    return min(va, vb), max(va, vb)


def derivative_envelope(phase: PhaseFunction, n_start: int, L: int, k: int) -> DerivEnvelope:
    """Envelope (W, lam) of |f^(k)| over the closed interval [n_start, n_start+L-1].

    Raises EnvelopeError if the derivative vanishes on the interval.
    """
    if L < 1:
        raise ValueError(f"interval length must be >= 1, got {L}")
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"derivative order must lie in [1, {MAX_ORDER}], got {k}")
    a, b = float(n_start), float(n_start + L - 1)
    lo, hi = _abs_extrema(phase, a, b, k)
    if lo == 0.0:
        raise EnvelopeError(f"min |f^({k})| is zero on [{a}, {b}]")
    # outward rounding keeps the sandwich valid to the last ulp
    W = up(1.0 / lo)
    lam = max(up(hi * W), 1.0)
    return DerivEnvelope(k=k, n_start=int(n_start), L=int(L), W=W, lam=lam)
