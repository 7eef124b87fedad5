import math

from hypothesis import given
from hypothesis import strategies as st

from zetaline.rounding import ceil_decimals, down, up

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False)


@given(finite)
def test_up_down_bracket(x):
    assert down(x) <= x <= up(x)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_ceil_decimals_is_smallest_grid_point_above(x):
    v = ceil_decimals(x, 4)
    assert v >= x
    assert v - x < 1e-4 + 1e-9


def test_ceil_decimals_exact_grid_point_kept():
    assert ceil_decimals(44.0004, 4) == 44.0004
    assert ceil_decimals(44.00031, 4) == 44.0004
