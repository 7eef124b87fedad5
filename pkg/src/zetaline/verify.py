"""End-to-end soundness sweep: |zeta(1+it)| from the oracle against the bounds."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .oracles import zeta_direct
from .pipeline import REFERENCE_PARAMS, PipelineParams, zeta_one_line_bound
from .rs_one_line import TRIANGLE_FROM, triangle_one_line_bound

T_MIN, T_MAX = 3.0, 1e8
BOUND_KINDS = ("min", "triangle")


@dataclass(frozen=True)
class SweepSample:
    index: int
    t: float
    zeta_abs: float
    oracle_error: float
    bound: float
    which: str
    seconds: float

    @property
    def ok(self) -> bool:
        return self.zeta_abs + self.oracle_error <= self.bound

    @property
    def ratio(self) -> float:
        return (self.zeta_abs + self.oracle_error) / self.bound

    def to_dict(self) -> dict:
        return {"index": self.index, "t": self.t, "zeta_abs": self.zeta_abs, "oracle_error": self.oracle_error,
                "bound": self.bound, "which": self.which, "ratio": self.ratio, "ok": self.ok,
                "seconds": self.seconds}


def check_range(t_min: float, t_max: float, bound: str = "min"):
    if bound not in BOUND_KINDS:
        raise ValueError(f"bound must be one of {BOUND_KINDS}, got {bound!r}")
    lo = TRIANGLE_FROM if bound == "triangle" else T_MIN
    if not (math.isfinite(t_min) and math.isfinite(t_max)) or not t_min <= t_max:
        raise ValueError(f"empty t range [{t_min}, {t_max}]")
    if t_min < lo or t_max > T_MAX:
        raise ValueError(f"t range must lie in [{lo:g}, {T_MAX:g}], got [{t_min:g}, {t_max:g}]")


def sample_t_values(t_min: float, t_max: float, samples: int, seed: int = 0) -> list[float]:
    """Half a log-spaced grid, half seeded log-uniform draws, in that order."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    n_grid = (samples + 1) // 2
    grid = np.geomspace(t_min, t_max, n_grid) if n_grid > 1 else np.array([t_min])
    rng = np.random.default_rng(seed)
    rand = np.exp(rng.uniform(math.log(t_min), math.log(t_max), samples - n_grid))
    return [float(x) for x in np.concatenate([grid, rand])]


def _sample(args) -> SweepSample:
    index, t, bound, params = args
    start = time.perf_counter()
    z = zeta_direct(t)
    if bound == "triangle":
        value, which = triangle_one_line_bound(t).evaluate(t), "triangle"
    else:
        b = zeta_one_line_bound(t, params)
        value, which = b.value, b.which.value
    return SweepSample(index, t, abs(z.value), z.error_bound, value, which, time.perf_counter() - start)


def soundness_sweep(t_values, bound: str = "min", params: PipelineParams = REFERENCE_PARAMS,
                    workers: int = 1) -> list[SweepSample]:
    """One SweepSample per t, in input order whatever the worker count."""
    t_values = list(t_values)
    if t_values:
        check_range(min(t_values), max(t_values), bound)
    jobs = [(i, float(t), bound, params) for i, t in enumerate(t_values)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_sample, jobs))
    return [_sample(job) for job in jobs]
