import pytest

from zetaline.verify import check_range, sample_t_values, soundness_sweep


def test_sample_values_deterministic_and_in_range():
    a = sample_t_values(3, 1e5, 21, seed=1)
    assert a == sample_t_values(3, 1e5, 21, seed=1)
    assert len(a) == 21 and all(3 <= t <= 1e5 for t in a)
    assert a[0] == 3 and a[10] == pytest.approx(1e5)


def test_range_checks():
    for lo, hi, kind in ((10, 5, "min"), (2, 10, "min"), (3, 2e8, "min"), (10, 100, "triangle"), (50, 60, "x")):
        with pytest.raises(ValueError):
            check_range(lo, hi, kind)
    check_range(47, 1e6, "triangle")


def test_sweep_passes_and_keeps_order():
    ts = sample_t_values(3, 1e4, 20, seed=0)
    res = soundness_sweep(ts, workers=2)
    assert [s.index for s in res] == list(range(20))
    assert [s.t for s in res] == ts
    assert all(s.ok for s in res)
    assert max(s.ratio for s in res) < 1


def test_triangle_sweep():
    res = soundness_sweep(sample_t_values(47, 1e5, 10, seed=2), bound="triangle")
    assert all(s.ok and s.which == "triangle" for s in res)
