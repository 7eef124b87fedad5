"""Dyadic fifth-derivative pipeline for |zeta(1+it)| <= 1/5 log t + const.

The Dirichlet sum up to n1 = floor(sqrt(t/2pi)) is split at j t^{1/5}.
The head is bounded by the harmonic sum.  The rest is cut into blocks
[ceil(x_r), floor(x_{r+1}) - delta_r] with x_r = (1+eps)^r j t^{1/5}.
Each block gets the fifth-derivative test after partial summation, and
the block bounds are summed in closed form into A1..A5.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from .breakdown import BoundBreakdown
from .exp_sums import Beta4Mode, EtaVector, fifth_derivative_bound, fifth_order_coeffs
from .gamma_chi import g_function
from .phase_models import PhaseFunction, derivative_envelope
from .rounding import ceil_decimals, up
from .rs_one_line import (
    EULER_GAMMA,
    LOG_BOUND_FROM,
    TRIANGLE_CONSTANT,
    TRIANGLE_FROM,
    partial_summation_reduce,
    rs_n1,
    rs_remainder,
)

SQRT_2PI = math.sqrt(2 * math.pi)

REFERENCE_ETA3 = (15 * math.sqrt(math.pi) / 32) ** (2 / 3)
REFERENCE_ETA4 = (91 / (72 * math.sqrt(23))) ** (6 / 7)
REFERENCE_ETA = EtaVector(REFERENCE_ETA3, REFERENCE_ETA4, 2.2)

# published reference values for the default parameter set
REFERENCE_CONSTANT = 43.9259
REFERENCE_TAILS = (0.035264, 0.255693, 0.0552644, 2.96078)
REFERENCE_STITCHED = 44.02
REFERENCE_CROSSOVER = 8.261e60


class EmptyBlockError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineParams:
    epsilon: float = 0.32
    j: int = 60
    eta: EtaVector = REFERENCE_ETA
    t0: float = 8e60
    beta4_mode: Beta4Mode = Beta4Mode.PROOF_18_10

    def __post_init__(self):
        object.__setattr__(self, "beta4_mode", Beta4Mode(self.beta4_mode))
        if not (isinstance(self.j, int) or float(self.j).is_integer()):
            raise ValueError(f"j must be an integer, got {self.j}")
        object.__setattr__(self, "j", int(self.j))
        if self.j < 2:
            raise ValueError(f"j must be >= 2, got {self.j}")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not (math.isfinite(self.t0) and self.t0 > (2 / self.j) ** 5):
            raise ValueError(f"t0 must exceed (2/j)^5, got {self.t0}")
        if not self.epsilon > 2 / (self.j * self.t0 ** 0.2):
            raise ValueError(
                f"epsilon={self.epsilon} must exceed 2/(j t0^(1/5)) = {2 / (self.j * self.t0**0.2):.6g}"
            )
        if not math.pi * self.j**5 / 12 > 1:
            raise ValueError("need pi j^5 / 12 > 1")

    def with_(self, **kw) -> "PipelineParams":
        if any(k.startswith("eta") and k != "eta" for k in kw):
            e = {k: kw.pop(k) for k in ("eta3", "eta4", "eta5") if k in kw}
            kw["eta"] = replace(self.eta, **e)
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "j": self.j,
            "eta3": self.eta.eta3,
            "eta4": self.eta.eta4,
            "eta5": self.eta.eta5,
            "t0": self.t0,
            "beta4_mode": self.beta4_mode.value,
        }


REFERENCE_PARAMS = PipelineParams()


# --- exact block geometry -------------------------------------------------


def _floor_root5(num: Fraction) -> tuple[int, bool]:
    """floor(num^{1/5}) and whether num is a perfect fifth power."""
    with mpmath.workdps(60):
        guess = mpmath.root(mpmath.mpf(num.numerator) / num.denominator, 5)
        k = int(mpmath.floor(guess))
    while k > 0 and Fraction(k) ** 5 > num:
        k -= 1
    while Fraction(k + 1) ** 5 <= num:
        k += 1
    return k, Fraction(k) ** 5 == num


@dataclass(frozen=True)
class GridPoint:
    """x_r = (1+eps)^r j t^{1/5} with its exact floor and ceiling."""

    r: int
    floor: int
    ceil: int
    integral: bool


def grid_point(params: PipelineParams, t: float, r: int) -> GridPoint:
    """Floor/ceiling of x_r decided with exact rational arithmetic.

    epsilon and t are taken as the binary64 numbers they are stored as.
    """
    c = (1 + Fraction(params.epsilon)) ** r * params.j
    k, integral = _floor_root5(Fraction(t) * c**5)
    return GridPoint(r, k, k if integral else k + 1, integral)


@dataclass(frozen=True)
class Block:
    r: int
    start: int
    end_full: int
    end: int
    delta: int

    @property
    def L_full(self) -> int:
        return self.end_full - self.start + 1

    @property
    def L(self) -> int:
        return self.end - self.start + 1


def block_geometry(params: PipelineParams, t: float, r: int) -> Block:
    """Untruncated block r; ``end`` is clipped at n1."""
    lo, hi = grid_point(params, t, r), grid_point(params, t, r + 1)
    delta = 1 if hi.integral else 0
    end_full = hi.floor - delta
    return Block(r, lo.ceil, end_full, min(end_full, rs_n1(t)), delta)


def head_end(params: PipelineParams, t: float) -> int:
    """Last index floor(j t^{1/5}) - delta_0 of the harmonic head."""
    p = grid_point(params, t, 0)
    return p.floor - (1 if p.integral else 0)


def dyadic_count_bound(params: PipelineParams, t: float) -> int:
    """R(eps) = floor((0.3 log t - log(sqrt(2pi) j)) / log(1+eps)) + 1, at least 1."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not params.epsilon > 2 / (params.j * t**0.2):
        raise ValueError("need epsilon > 2/(j t^(1/5))")
    with mpmath.workdps(40):
        q = (mpmath.mpf(3) / 10 * mpmath.log(t) - mpmath.log(mpmath.sqrt(2 * mpmath.pi) * params.j)) / mpmath.log(
            1 + mpmath.mpf(params.epsilon)
        )
        R = int(mpmath.floor(q)) + 1
    return max(R, 1)


def dyadic_blocks(params: PipelineParams, t: float) -> list[Block]:
    """Nonempty blocks covering [ceil(j t^{1/5}), n1], last one clipped at n1."""
    n1 = rs_n1(t)
    blocks = []
    r = 0
    while True:
        b = block_geometry(params, t, r)
        if b.start > n1:
            break
        if b.L_full < 1:
            raise EmptyBlockError(f"block {r} is empty at t={t}; epsilon too small")
        blocks.append(b)
        r += 1
    return blocks


def block_bound(params: PipelineParams, t: float, r: int) -> float:
    """Upper bound for |sum over block r of n^{-1-it}|.

    Partial summation reduces to max_D |sum_{start}^{start+D-1} n^{-it}|.
    The fifth-derivative bound over the whole untruncated block dominates
    every prefix, since its envelope covers each prefix and the bound is
    nondecreasing in L.  So it also covers a block clipped at n1.
    """
    b = block_geometry(params, t, r)
    if b.L_full < 1:
        raise EmptyBlockError(f"block {r} is empty at t={t}")
    env = derivative_envelope(PhaseFunction.zeta_log(t), b.start, b.L_full, 5)
    s = fifth_derivative_bound(b.L_full, env, params.eta, params.beta4_mode)
    return up(partial_summation_reduce(s, b.start - 1))


# --- closed-form aggregation ---------------------------------------------


def geometric_decay_sum_bound(epsilon: float, c: float) -> float:
    """sum_{r>=0} (1+eps)^{-c r} = E^c / (E^c - 1)."""
    E = (1 + epsilon) ** c
    return E / (E - 1)


def geometric_growth_sum_bound(epsilon: float, d: float, j: int, t: float) -> float:
    """Bound for sum_{r<R} (1+eps)^{d r} using (1+eps)^{R-1} j t^{1/5} <= sqrt(t/2pi)."""
    E = (1 + epsilon) ** d
    return E / ((2 * math.pi) ** (d / 2) * j**d * (E - 1)) * t ** (3 * d / 10)


class TailMode(str, enum.Enum):
    PER_T = "per_t"
    CONSTANT = "constant"


@dataclass(frozen=True)
class TailCoefficients:
    A1: float
    A2: float
    A3: float
    A4: float
    A5: float
    C1: float
    C2: float
    d1: float
    d2: float
    phi: float
    t_eval: float
    coeffs: dict = field(default_factory=dict, compare=False)

    # t-powers of A1..A4
    POWERS = (-3 / 10, -9 / 40, -1 / 5, -1 / 10)

    @property
    def tails(self) -> tuple[float, float, float, float]:
        return (self.A1, self.A2, self.A3, self.A4)

    def evaluate(self, t: float) -> float:
        return sum(a * t**p for a, p in zip(self.tails, self.POWERS)) + self.A5


def aggregate_tail_bound(params: PipelineParams, t: float, mode: TailMode | str = TailMode.PER_T) -> TailCoefficients:
    """A1..A5 with |sum_{ceil(j t^{1/5})}^{n1} n^{-1-it}| <= sum A_i t^{-p_i} + A5.

    In per-t mode C1, C2 are evaluated at t; in constant mode at t0, which
    is valid for every t >= t0 because C1 and C2 decrease in t.
    """
    mode = TailMode(mode)
    eps, j = params.epsilon, params.j
    te = t if mode is TailMode.PER_T else params.t0
    if mode is TailMode.CONSTANT and t < params.t0:
        raise ValueError(f"constant mode is only valid for t >= t0={params.t0}")
    phi = eps - 2 / (j * te**0.2)
    if not phi > 0:
        raise ValueError(f"need epsilon > 2/(j t^(1/5)) at t={te}")
    W = math.pi * j**5 / 12
    lam = (1 + eps) ** 5
    c = fifth_order_coeffs(W, lam, params.eta, params.beta4_mode)
    e5 = params.eta.eta5
    q = math.pi / 12
    E = 1 + eps
    C1 = math.sqrt(
        c.tau5 * q ** (2 / 15) * E ** (2 / 3) * j ** (5 / 12) / phi**0.25
        + c.gamma5 * q ** (1 / 5) * E * j**0.5 / phi**0.5 / te ** (1 / 20)
        + c.omega5 * q ** (1 / 5) * E * j**0.25 / phi**0.75 / te ** (1 / 10)
        + c.beta5 * q ** (4 / 15) * E ** (4 / 3) * j ** (1 / 3) / phi / te ** (3 / 20)
    )
    C2 = math.sqrt(
        e5 * c.alpha5 * q ** (1 / 15) * E ** (1 / 3) / (j ** (2 / 3) * phi)
        + e5 * c.tau5 * q ** (1 / 5) * E / (j**0.25 * phi**1.25) / te ** (1 / 20)
        + e5 * c.gamma5 * q ** (4 / 15) * E ** (4 / 3) / (j ** (1 / 6) * phi**1.5) / te ** (1 / 10)
        + e5 * c.omega5 * q ** (4 / 15) * E ** (4 / 3) / (j ** (5 / 12) * phi**1.75) / te ** (3 / 20)
        + e5 * c.beta5 * q ** (1 / 3) * E ** (5 / 3) / (phi**2 * j ** (1 / 3)) / te ** (1 / 5)
    )
    k = (12 / math.pi) ** (1 / 30)
    d1 = k * eps / j ** (1 / 6)
    d2 = k / j ** (7 / 6)
    sa = math.sqrt(c.alpha5)
    dec = functools.partial(geometric_decay_sum_bound, eps)
    A1 = d2 * C2 * dec(5 / 4)
    A2 = d2 * C1 * dec(11 / 12)
    A3 = d2 * sa * dec(7 / 6)
    A4 = d1 * C2 * dec(1 / 4)
    # the C1 growth sum carries t^{1/40}, which cancels the t^{-1/40} in front
    A5 = d1 * sa * dec(1 / 6) + d1 * C1 * E ** (1 / 12) / ((2 * math.pi) ** (1 / 24) * j ** (1 / 12) * (E ** (1 / 12) - 1))
    return TailCoefficients(
        *(up(x) for x in (A1, A2, A3, A4, A5)),
        C1=C1, C2=C2, d1=d1, d2=d2, phi=phi, t_eval=te,
        coeffs={"alpha5": c.alpha5, "tau5": c.tau5, "gamma5": c.gamma5, "omega5": c.omega5, "beta5": c.beta5,
                "W5": W, "lambda5": lam},
    )


def pipeline_breakdown(params: PipelineParams, t: float | None = None) -> BoundBreakdown:
    """The 1/5 log t bound with its additive constant and decaying tails.

    With t=None this is the constant-mode form, valid for all t >= t0.
    Otherwise every t-dependent piece is evaluated at t and the result is
    valid at t itself.
    """
    if t is None:
        tc = aggregate_tail_bound(params, params.t0, TailMode.CONSTANT)
        t_ref, valid_from = params.t0, params.t0
    else:
        tc = aggregate_tail_bound(params, t, TailMode.PER_T)
        t_ref, valid_from = t, t
    g = g_function(t_ref)
    rem = rs_remainder(t_ref)
    constant = up(EULER_GAMMA + math.log(params.j) + tc.A5 + g / SQRT_2PI + rem)
    return BoundBreakdown(
        leading_coeff=0.2,
        additive_constant=constant,
        valid_from=valid_from,
        tail_terms=tuple(zip(tc.tails, TailCoefficients.POWERS)),
        harmonic_j=params.j,
        label="fifth_log",
        components={
            "euler_gamma": EULER_GAMMA,
            "log_j": math.log(params.j),
            "A5": tc.A5,
            "conjugate_sum": g / SQRT_2PI,
            "remainder": rem,
            "C1": tc.C1,
            "C2": tc.C2,
            "d1": tc.d1,
            "d2": tc.d2,
            **tc.coeffs,
        },
    )


def pipeline_constant(params: PipelineParams) -> float:
    return pipeline_breakdown(params).additive_constant


def F_function(params: PipelineParams, t: float) -> float:
    """F(t) = bound - 1/5 log t in constant mode; requires t >= t0."""
    if t < params.t0:
        raise ValueError(f"F is only defined for t >= t0={params.t0}")
    b = pipeline_breakdown(params)
    return up(b.additive_constant + b.tail(t))


def stitch_requirements(params: PipelineParams) -> dict:
    """Lower bounds the 1/5 log t constant must meet on each t-range."""
    return {
        "asymptotic": F_function(params, params.t0),
        "half_log_below_t0": TRIANGLE_CONSTANT + 0.3 * math.log(params.t0),
        "log_below_47": 0.8 * math.log(TRIANGLE_FROM),
    }


@functools.lru_cache(maxsize=4096)
def stitch_constant(params: PipelineParams) -> float:
    """Smallest 4-decimal c with |zeta(1+it)| <= 1/5 log t + c for every t >= 3.

    For t >= t0 the pipeline gives F(t) <= F(t0).  For 47 <= t < t0 the half
    log bound is smaller than 1/5 log t + c once c >= 1.93 + 0.3 log t0, and
    for 3 <= t < 47 the log t bound needs c >= 0.8 log 47.
    """
    return ceil_decimals(up(max(stitch_requirements(params).values())), 4)


def crossover(constant: float) -> float:
    """t where 1/2 log t + 1.93 meets 1/5 log t + constant."""
    return math.exp((constant - TRIANGLE_CONSTANT) / 0.3)


# --- the final three-way minimum -------------------------------------------


class Which(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"


@dataclass(frozen=True)
class OneLineBound:
    t: float
    value: float
    which: Which
    breakdown: BoundBreakdown
    candidates: dict


def zeta_one_line_bound(t: float, params: PipelineParams = REFERENCE_PARAMS) -> OneLineBound:
    """min(log t, 1/2 log t + 1.93 [t >= 47], 1/5 log t + stitched constant)."""
    if not (t >= LOG_BOUND_FROM and math.isfinite(t)):
        raise ValueError(f"bound needs t >= {LOG_BOUND_FROM}, got {t}")
    c3 = stitch_constant(params)
    lt = math.log(t)
    options = [
        (Which.FIRST, BoundBreakdown(1.0, 0.0, LOG_BOUND_FROM, label="log")),
        (Which.SECOND, BoundBreakdown(0.5, TRIANGLE_CONSTANT, TRIANGLE_FROM, label="half_log")),
        (Which.THIRD, BoundBreakdown(0.2, c3, LOG_BOUND_FROM, label="fifth_log")),
    ]
    candidates = {}
    best = None
    for which, bd in options:
        if t < bd.valid_from:
            continue
        v = up(bd.leading_coeff * lt + bd.additive_constant)
        candidates[which.value] = v
        if best is None or v < best[0]:
            best = (v, which, bd)
    return OneLineBound(t, best[0], best[1], best[2], candidates)
