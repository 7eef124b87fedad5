"""Random exponential-sum instances that satisfy the derivative-test hypotheses."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exp_sums import (
    Beta4Mode,
    EtaVector,
    SecondDerivVariant,
    fifth_derivative_bound,
    fourth_derivative_bound,
    kuzmin_landau_bound,
    second_derivative_bound,
    third_derivative_bound,
)
from .oracles import exp_sum_brute
from .phase_models import EnvelopeError, PhaseFunction, derivative_envelope
from .rounding import up

MAX_L = 10**5
# Largest phase magnitude |f(n)| allowed in generated instances.  Beyond
# this the extended-precision reduction mod 1 loses too many digits for
# the brute-force sum to be a useful reference.
THETA_CAP = 1e11


@dataclass(frozen=True)
class Instance:
    order: int
    phase: PhaseFunction
    n_start: int
    L: int
    eta: EtaVector | None = None
    variant: SecondDerivVariant | None = None
    tag: str = ""
    extra: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class CheckResult:
    instance: Instance
    brute: float
    brute_error: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.brute + self.brute_error <= self.bound

    @property
    def ratio(self) -> float:
        """bound / (|S| + error); at least 1 for a sound bound."""
        return self.bound / (self.brute + self.brute_error)


def _log_uniform(rng, lo, hi):
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def _length(rng, max_L):
    return max(1, int(_log_uniform(rng, 1, max_L)))


def _random_eta(rng) -> EtaVector:
    return EtaVector(*(_log_uniform(rng, 0.1, 5.0) for _ in range(3)))


def _dist_to_int(x: float) -> float:
    return abs(x - round(x))


def _order1(rng, kind, max_L) -> Instance:
    if kind == "zeta_log":
        while True:
            a = int(_log_uniform(rng, 1, 1e5))
            k = int(rng.integers(0, 50))
            u0 = rng.uniform(0.05, 0.98)
            u1 = rng.uniform(0.02, u0 - 0.01)
            t = 2 * math.pi * a * (k + u0)
            if t <= 0:
                continue
            b = t / (2 * math.pi * (k + u1)) if k + u1 > 0 else a + max_L
            L = max(1, min(int(b) - a + 1, max_L))
            return Instance(1, PhaseFunction.zeta_log(t), a, L, tag="zeta_log")
    a = int(rng.integers(1, 1000))
    L = _length(rng, max_L)
    k = int(rng.integers(-20, 20))
    v0, v1 = rng.uniform(0.02, 0.98, size=2)
    c2 = (v1 - v0) / (2 * max(L - 1, 1))
    c1 = k + v0 - 2 * c2 * a
    return Instance(1, PhaseFunction.polynomial([rng.uniform(0, 1), c1, c2]), a, L, tag="polynomial")


def _poly_with_kth(rng, k, a, L) -> PhaseFunction:
    """Degree k+1 polynomial with f^(k) of one sign and |f^(k)| < 1 on [a, a+L-1]."""
    b = a + L - 1
    sign = rng.choice([-1.0, 1.0])
    v0 = sign * _log_uniform(rng, 1e-7, 0.9)
    v1 = sign * _log_uniform(rng, 1e-7, 0.9)
    low = [rng.uniform(0, 1), rng.uniform(0, 1)] + [rng.uniform(-1, 1) * b ** (1 - i) for i in range(2, k)]

    def top(v0, v1):
        c1 = 0.0 if L == 1 else (v1 - v0) / (math.factorial(k + 1) * (L - 1))
        ck = (v0 - math.factorial(k + 1) * c1 * a) / math.factorial(k)
        return [ck, c1]

    ck, c1 = top(v0, v1)
    scale = abs(ck) * b**k + abs(c1) * b ** (k + 1)
    if scale > THETA_CAP:
        shrink = THETA_CAP / scale
        ck, c1 = top(v0 * shrink, v1 * shrink)
    return PhaseFunction.polynomial(low[:k] + [ck, c1])


def _zeta_log_kth(rng, k, max_L) -> tuple[PhaseFunction, int, int]:
    """zeta_log phase on a random interval with W_k = 1/min|f^(k)| > 1.

    t is kept small enough that |f(n)| <= THETA_CAP on the interval.
    """
    a = int(_log_uniform(rng, 1, 2e5))
    L = _length(rng, max_L)
    b = a + L - 1
    t_max = 2 * math.pi * THETA_CAP / math.log(b + 1)
    w_min = max(1.5, 2 * math.pi * b**k / (math.factorial(k - 1) * t_max))
    W = _log_uniform(rng, w_min, w_min * 1e6)
    t = 2 * math.pi * b**k / (math.factorial(k - 1) * W)
    return PhaseFunction.zeta_log(t), a, L


def random_instance(order: int, rng: np.random.Generator, kind: str | None = None,
                    max_L: int = MAX_L) -> Instance:
    if kind is None:
        kind = "zeta_log" if rng.random() < 0.5 else "polynomial"
    if order == 1:
        return _order1(rng, kind, max_L)
    if order not in (2, 3, 4, 5):
        raise ValueError(f"order must be 1..5, got {order}")
    if kind == "zeta_log":
        phase, a, L = _zeta_log_kth(rng, order, max_L)
    else:
        a = int(rng.integers(1, 1000))
        L = _length(rng, max_L)
        phase = _poly_with_kth(rng, order, a, L)
    if order == 2:
        variant = SecondDerivVariant.PLATT_TRUDGIAN if rng.random() < 0.5 else SecondDerivVariant.CHENG_GRAHAM_CORRECTED
        return Instance(2, phase, a, L, variant=variant, tag=kind)
    return Instance(order, phase, a, L, eta=_random_eta(rng), tag=kind)


def pipeline_instance(rng: np.random.Generator, t_lo=1e6, t_hi=1e8, epsilon=0.32, j=60) -> Instance:
    """Order-5 instance shaped like a dyadic block [ceil(x_r), floor(x_{r+1})]."""
    t = _log_uniform(rng, t_lo, t_hi)
    x = j * t**0.2 * (1 + epsilon) ** int(rng.integers(0, 4))
    a = math.ceil(x)
    L = max(1, math.floor((1 + epsilon) * x) - a + 1)
    eta = EtaVector((15 * math.sqrt(math.pi) / 32) ** (2 / 3), (91 / (72 * math.sqrt(23))) ** (6 / 7), 2.2)
    return Instance(5, PhaseFunction.zeta_log(t), a, min(L, MAX_L), eta=eta, tag="pipeline")


def instance_bound(inst: Instance, beta4_mode=Beta4Mode.PROOF_18_10) -> float:
    """The derivative-test bound that applies to the instance."""
    if inst.order == 1:
        a, b = float(inst.n_start), float(inst.n_start + inst.L - 1)
        d = min(_dist_to_int(inst.phase.deriv(a, 1)), _dist_to_int(inst.phase.deriv(b, 1)))
        if d == 0:
            raise EnvelopeError("f' hits an integer")
        return kuzmin_landau_bound(max(2.0, up(1.0 / d)))
    env = derivative_envelope(inst.phase, inst.n_start, inst.L, inst.order)
    if inst.order == 2:
        # 1/W <= |f''| <= lam/W =: 1/V; shrink V a hair if lam == 1 to keep V < W
        V = env.W / env.lam
        if not V < env.W:
            V = env.W * (1 - 1e-12)
        return second_derivative_bound(inst.L, V, env.W, inst.variant)
    if not env.W > 1:
        raise EnvelopeError(f"W={env.W} <= 1")
    if inst.order == 3:
        return third_derivative_bound(inst.L, env, inst.eta.eta3)
    if inst.order == 4:
        return fourth_derivative_bound(inst.L, env, inst.eta, beta4_mode)
    return fifth_derivative_bound(inst.L, env, inst.eta, beta4_mode)


def check_instance(inst: Instance, beta4_mode=Beta4Mode.PROOF_18_10) -> CheckResult:
    brute = exp_sum_brute(inst.phase, inst.n_start, inst.L)
    return CheckResult(inst, abs(brute.value), brute.error_bound, instance_bound(inst, beta4_mode))


def _try_check(inst: Instance) -> CheckResult | None:
    try:
        return check_instance(inst)
    except EnvelopeError:
        return None


def run_suite(order: int, trials: int, seed: int = 0, kind: str | None = None,
              max_L: int = MAX_L, pipeline_shaped: bool = False, workers: int = 1) -> list[CheckResult]:
    """``trials`` checked instances; instances whose envelope fails are redrawn.

    Instances are drawn in order from one seeded generator and checked in
    batches, so the result does not depend on ``workers``.
    """
    rng = np.random.default_rng([seed, order])
    out: list[CheckResult] = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while len(out) < trials:
            need = trials - len(out)
            batch = [pipeline_instance(rng) if pipeline_shaped else random_instance(order, rng, kind, max_L)
                     for _ in range(need)]
            results = pool.map(_try_check, batch, chunksize=8) if pool else map(_try_check, batch)
            out.extend(r for r in results if r is not None)
    finally:
        if pool:
            pool.shutdown()
    return out
