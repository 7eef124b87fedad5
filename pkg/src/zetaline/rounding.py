"""Outward rounding for closed-form bounds.

Every bound in this package is evaluated in binary64 and then pushed
outward by a relative margin of ``INFLATION`` at the last step.  The
expressions involved are at most a few dozen operations deep, so the
accumulated rounding error is many orders of magnitude below 1e-9.
"""

import math

INFLATION = 1e-9


def up(x: float) -> float:
    """Round ``x`` outward (toward +inf) by the inflation margin."""
    return x + abs(x) * INFLATION


def down(x: float) -> float:
    """Round ``x`` toward -inf by the inflation margin."""
    return x - abs(x) * INFLATION


def ceil_decimals(x: float, places: int) -> float:
    scale = 10**places
    v = math.ceil(x * scale) / scale
    # guard against the division landing one ulp below x
    while v < x:
        v = math.nextafter(v, math.inf)
    return v
