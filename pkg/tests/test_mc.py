import math

import pytest

from sstdist.channel import ebn0_to_point
from sstdist.code import taps_general
from sstdist.dist import BranchDist, joint_dist
from sstdist.mc import SimReport, simulate_binary, simulate_mixture


def test_error_free_stream(c1):
    for n in (1, 7, 1000):
        rep = simulate_binary(c1, "general", 0.0, n, seed=3)
        assert rep.estimates == {"a1": 0.0, "a2": 0.0, "a11": 0.0, "delta": 0.0}
        assert rep.passed


@pytest.mark.parametrize("mode", ["general", "qli"])
def test_binary_concordance(c1, mode):
    rep = simulate_binary(c1, mode, 0.12, 200_000, seed=11)
    assert rep.passed, rep.lines()


def test_binary_deterministic(c1):
    a = simulate_binary(c1, "qli", 0.05, 50_000, seed=99)
    b = simulate_binary(c1, "qli", 0.05, 50_000, seed=99)
    assert a == b
    assert a != simulate_binary(c1, "qli", 0.05, 50_000, seed=100)


def test_degenerate_mixture():
    rep = simulate_mixture(BranchDist.from_joint(1.0, 0.0, 0.0, 0.0), 1.0, 100_000, seed=5)
    assert rep.analytic["m1"] == 1.0 and rep.analytic["s12"] == 0.0
    assert rep.passed, rep.lines()


def test_mixture_c1(c1):
    pt = ebn0_to_point(3)
    b = joint_dist(*taps_general(c1), pt.eps)
    rep = simulate_mixture(b, pt.c, 200_000, seed=8)
    assert rep.passed, rep.lines()


def test_two_samples():
    rep = simulate_mixture(BranchDist.from_joint(0.4, 0.1, 0.2, 0.3), 1.0, 2, seed=1)
    assert rep.samples == 2
    assert all(math.isfinite(v) for v in rep.std_errors.values())
    with pytest.raises(ValueError):
        simulate_mixture(BranchDist.from_joint(0.4, 0.1, 0.2, 0.3), 1.0, 1, seed=1)


def test_mixture_deterministic():
    b = BranchDist.from_joint(0.4, 0.1, 0.2, 0.3)
    assert simulate_mixture(b, 1.3, 10_000, seed=4) == simulate_mixture(b, 1.3, 10_000, seed=4)


def test_standard_error_scaling(c1):
    ratios = []
    for seed in range(5):
        small = simulate_binary(c1, "general", 0.08, 100_000, seed=seed)
        large = simulate_binary(c1, "general", 0.08, 400_000, seed=seed)
        ratios += [small.std_errors[k] / large.std_errors[k] for k in small.std_errors]
    assert all(1.6 <= r <= 2.4 for r in ratios), ratios


def test_report_threshold():
    rep = SimReport(samples=10, estimates={"x": 1.0}, analytic={"x": 0.0}, std_errors={"x": 0.2}, threshold=4.0)
    assert rep.z_scores["x"] == pytest.approx(5.0) and not rep.passed
    rep = SimReport(samples=10, estimates={"x": 1.0}, analytic={"x": 0.0}, std_errors={"x": 0.0})
    assert rep.z_scores["x"] == math.inf


def test_binary_rejects_bad_input(c1):
    with pytest.raises(ValueError):
        simulate_binary(c1, "general", 0.1, 0, seed=1)
    with pytest.raises(ValueError):
        simulate_binary(c1, "general", 0.7, 10, seed=1)
