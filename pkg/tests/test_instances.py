import math

import numpy as np
import pytest

from zetaline.instances import (
    THETA_CAP,
    check_instance,
    instance_bound,
    pipeline_instance,
    random_instance,
    run_suite,
)
from zetaline.phase_models import EnvelopeError, derivative_envelope


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("kind", ["zeta_log", "polynomial"])
def test_small_suite_sound(order, kind):
    results = run_suite(order, 60, seed=11, kind=kind, max_L=20000)
    assert len(results) == 60
    assert all(r.ok for r in results), min(r.ratio for r in results)


@pytest.mark.parametrize("order", [2, 3, 4, 5])
def test_generated_instances_meet_hypotheses(order):
    rng = np.random.default_rng(5)
    for _ in range(40):
        inst = random_instance(order, rng)
        try:
            env = derivative_envelope(inst.phase, inst.n_start, inst.L, order)
        except EnvelopeError:
            continue
        if order > 2:
            assert env.W > 1
        b = inst.n_start + inst.L - 1
        assert abs(float(inst.phase(float(b)))) <= 1.01 * THETA_CAP


def test_pipeline_shaped_instances():
    results = run_suite(5, 20, seed=2, pipeline_shaped=True)
    assert all(r.ok for r in results)
    assert all(r.instance.tag == "pipeline" for r in results)


def test_pipeline_instance_geometry():
    rng = np.random.default_rng(0)
    inst = pipeline_instance(rng)
    assert inst.order == 5 and inst.phase.kind == "zeta_log"
    assert 1e6 <= inst.phase.t <= 1e8


def test_suite_deterministic_and_worker_independent():
    a = run_suite(3, 30, seed=4)
    b = run_suite(3, 30, seed=4, workers=2)
    assert [r.ratio for r in a] == [r.ratio for r in b]


def test_order_one_bound_uses_distance_to_integers():
    rng = np.random.default_rng(1)
    inst = random_instance(1, rng, kind="polynomial")
    assert instance_bound(inst) >= 4 / math.pi


def test_bad_order():
    with pytest.raises(ValueError):
        random_instance(6, np.random.default_rng(0))


def test_check_result_ratio():
    r = check_instance(random_instance(2, np.random.default_rng(9), kind="zeta_log"))
    assert r.ratio == pytest.approx(r.bound / (r.brute + r.brute_error))
