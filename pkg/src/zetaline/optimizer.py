"""Derivative-free search for pipeline parameters minimising the stitched constant.

The objective has floors, ceilings and a max() in it, so a coarse grid
over (epsilon, j) is followed by coordinate descent with step halving on
epsilon, the three etas and log t0.  j is swept over integer neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exp_sums import Beta4Mode, EtaVector
from .pipeline import REFERENCE_PARAMS, PipelineParams, stitch_constant, stitch_requirements

REJECT = math.inf


def evaluate_objective(params: PipelineParams) -> float:
    """stitch_constant(params), or +inf when the parameters are not admissible."""
    try:
        return stitch_constant(params)
    except (ValueError, OverflowError, ZeroDivisionError):
        return REJECT


def make_params(epsilon, j, eta3, eta4, eta5, t0, beta4_mode=Beta4Mode.PROOF_18_10) -> PipelineParams | None:
    try:
        return PipelineParams(float(epsilon), int(j), EtaVector(eta3, eta4, eta5), float(t0), beta4_mode)
    except ValueError:
        return None


def _range(name, lo, hi, positive=True):
    if not lo <= hi:
        raise ValueError(f"{name} range is empty: [{lo}, {hi}]")
    if positive and not lo > 0:
        raise ValueError(f"{name} range must be positive, got [{lo}, {hi}]")
    return (float(lo), float(hi))


@dataclass(frozen=True)
class SearchSpec:
    epsilon: tuple[float, float] = (0.1, 0.8)
    j: tuple[int, ...] = tuple(range(20, 161, 20))
    eta3: tuple[float, float] = (0.2, 3.0)
    eta4: tuple[float, float] = (0.05, 2.0)
    eta5: tuple[float, float] = (0.3, 8.0)
    t0: tuple[float, float] = (1e40, 1e70)
    budget: int = 10_000
    seed: int = 0
    grid_points: int = 8
    beta4_mode: Beta4Mode = Beta4Mode.PROOF_18_10
    start: PipelineParams | None = None

    def __post_init__(self):
        for name in ("epsilon", "eta3", "eta4", "eta5", "t0"):
            object.__setattr__(self, name, _range(name, *getattr(self, name)))
        js = tuple(int(x) for x in self.j)
        if not js or min(js) < 2:
            raise ValueError(f"j values must be integers >= 2, got {self.j}")
        object.__setattr__(self, "j", tuple(sorted(set(js))))
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        object.__setattr__(self, "beta4_mode", Beta4Mode(self.beta4_mode))

    @classmethod
    def around(cls, params: PipelineParams = REFERENCE_PARAMS, rel: float = 0.5, j_halfwidth: int = 20, **kw):
        """Box of relative half-width ``rel`` around ``params`` (t0 over +-20 decades)."""
        e = params.eta
        return cls(
            epsilon=(params.epsilon * (1 - rel), params.epsilon * (1 + rel)),
            j=tuple(range(max(2, params.j - j_halfwidth), params.j + j_halfwidth + 1)),
            eta3=(e.eta3 * (1 - rel), e.eta3 * (1 + rel)),
            eta4=(e.eta4 * (1 - rel), e.eta4 * (1 + rel)),
            eta5=(e.eta5 * (1 - rel), e.eta5 * (1 + rel)),
            t0=(params.t0 / 1e20, params.t0 * 1e20),
            beta4_mode=params.beta4_mode,
            start=params,
            **kw,
        )


@dataclass
class OptimizeResult:
    best_params: PipelineParams | None
    best_value: float
    trace: list = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def evaluations(self) -> int:
        return len(self.trace)


class _Budget(Exception):
    pass


class _Evaluator:
    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self.trace: list[tuple[dict, float]] = []
        self.cache: dict[tuple, float] = {}
        self.best: tuple[float, float, PipelineParams | None] = (REJECT, REJECT, None)

    def __call__(self, x: dict) -> tuple[float, float]:
        """(stitched constant, F(t0)).

        Comparing these lexicographically lets the search accept moves that
        lower F(t0) while the half-log branch still sets the stitched value;
        the next t0 rebalance turns that into a real improvement.
        """
        key = tuple(x[k] for k in ("epsilon", "j", "eta3", "eta4", "eta5", "t0"))
        if key in self.cache:
            return self.cache[key]
        if len(self.trace) >= self.spec.budget:
            raise _Budget
        p = make_params(*key, beta4_mode=self.spec.beta4_mode)
        v = REJECT if p is None else evaluate_objective(p)
        f = REJECT if v == REJECT else stitch_requirements(p)["asymptotic"]
        self.cache[key] = (v, f)
        self.trace.append((dict(x), v))
        if (v, f) < self.best[:2]:
            self.best = (v, f, p)
        return (v, f)


def _clip(spec: SearchSpec, name: str, v: float) -> float:
    lo, hi = getattr(spec, name)
    return min(max(v, lo), hi)


def _start_point(spec: SearchSpec) -> dict:
    if spec.start is not None:
        p = spec.start
        x = {"epsilon": p.epsilon, "j": p.j, "eta3": p.eta.eta3, "eta4": p.eta.eta4, "eta5": p.eta.eta5, "t0": p.t0}
    else:
        x = {n: math.sqrt(getattr(spec, n)[0] * getattr(spec, n)[1]) for n in ("epsilon", "eta3", "eta4", "eta5", "t0")}
        x["j"] = spec.j[len(spec.j) // 2]
    for n in ("epsilon", "eta3", "eta4", "eta5", "t0"):
        x[n] = _clip(spec, n, x[n])
    x["j"] = min(spec.j, key=lambda v: abs(v - x["j"]))
    return x


# coordinates searched in log space
_LOG_COORDS = ("eta3", "eta4", "eta5", "t0")
_COORDS = ("epsilon",) + _LOG_COORDS


def _move(spec, x, name, step, sign):
    y = dict(x)
    if name in _LOG_COORDS:
        y[name] = _clip(spec, name, x[name] * math.exp(sign * step))
    else:
        y[name] = _clip(spec, name, x[name] + sign * step)
    return y


def _balance_t0(spec, ev, x, fx, iters: int = 40):
    """Golden-section search over log t0 with the other coordinates fixed.

    In t0 the objective is max(decreasing F(t0), increasing 0.3 log t0 + c),
    so it is unimodal and the optimum sits where the two branches cross.
    """
    a, b = (math.log(v) for v in spec.t0)
    if b - a < 1e-9:
        return x, fx
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = ev(dict(x, t0=math.exp(c))), ev(dict(x, t0=math.exp(d)))
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = ev(dict(x, t0=math.exp(c)))
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = ev(dict(x, t0=math.exp(d)))
    y, fy = (dict(x, t0=math.exp(c)), fc) if fc <= fd else (dict(x, t0=math.exp(d)), fd)
    return (y, fy) if fy < fx else (x, fx)


def optimize(spec: SearchSpec) -> OptimizeResult:
    """Coarse (epsilon, j) grid, then coordinate descent.  Deterministic for a given seed."""
    rng = np.random.default_rng(spec.seed)
    ev = _Evaluator(spec)
    x = _start_point(spec)
    exhausted = False
    try:
        x, _ = _balance_t0(spec, ev, x, ev(x))
        lo, hi = spec.epsilon
        eps_grid = np.unique(np.linspace(lo, hi, max(1, spec.grid_points)))
        best_x, best_v = x, ev(x)
        for e in eps_grid:
            for j in spec.j:
                y = dict(x, epsilon=float(e), j=j)
                v = ev(y)
                if v < best_v:
                    best_x, best_v = y, v
        x, fx = _balance_t0(spec, ev, best_x, best_v)
        steps = {"epsilon": (hi - lo) / 4}
        for n in _LOG_COORDS:
            a, b = getattr(spec, n)
            steps[n] = max(math.log(b / a) / 4, 0.0)
        min_step = 1e-6
        while any(s > min_step for s in steps.values()):
            improved = False
            for i in rng.permutation(len(_COORDS)):
                name = _COORDS[i]
                if steps[name] <= min_step:
                    continue
                for sign in (1, -1):
                    y = _move(spec, x, name, steps[name], sign)
                    v = ev(y)
                    if v < fx:
                        x, fx, improved = y, v, True
                        break
            k = spec.j.index(x["j"])
            for nb in (k - 1, k + 1):
                if 0 <= nb < len(spec.j):
                    y = dict(x, j=spec.j[nb])
                    v = ev(y)
                    if v < fx:
                        x, fx, improved = y, v, True
            x, fb = _balance_t0(spec, ev, x, fx)
            improved = improved or fb < fx
            fx = fb
            if not improved:
                for n in steps:
                    steps[n] /= 2
    except _Budget:
        exhausted = True
    value, _, params = ev.best
    return OptimizeResult(params, value, ev.trace, exhausted)
