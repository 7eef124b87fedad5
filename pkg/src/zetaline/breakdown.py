"""Per-term decomposition of a bound of the form c*log t + const + tails."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class BoundBreakdown:
    """leading_coeff*log t + additive_constant + sum(c * t**p) [+ 1/(j t^{1/5} - 2)].

    The expression is a valid upper bound for every t >= valid_from.
    ``harmonic_j`` switches on the harmonic-sum correction term used by
    the dyadic pipeline.
    """

    leading_coeff: float
    additive_constant: float
    valid_from: float
    tail_terms: tuple[tuple[float, float], ...] = ()
    harmonic_j: int | None = None
    label: str = ""
    components: dict = field(default_factory=dict, compare=False)

    def tail(self, t: float) -> float:
        s = sum(c * t**p for c, p in self.tail_terms)
        if self.harmonic_j is not None:
            s += 1.0 / (self.harmonic_j * t**0.2 - 2)
        return s

    def evaluate(self, t: float) -> float:
        if t < self.valid_from:
            raise ValueError(f"breakdown '{self.label}' only valid for t >= {self.valid_from}, got {t}")
        return self.leading_coeff * math.log(t) + self.additive_constant + self.tail(t)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tail_terms"] = [list(x) for x in self.tail_terms]
        return d
