import math

import numpy as np
import pytest

from conftest import SQRT2
from radgauss import ArgumentError, normal_tail, optimal_constant
from radgauss.selfnorm import BLOCK, MagnitudeModel, _block_hits, exact_selfnorm_tail, mc_selfnorm_tail

C = optimal_constant()


def test_exact_reduction_examples():
    assert exact_selfnorm_tail([1, 1], SQRT2) == 0.25
    assert exact_selfnorm_tail([1, 1], SQRT2) == pytest.approx(C * normal_tail(SQRT2))
    assert exact_selfnorm_tail([3, 4], 1.0) == 0.25
    assert exact_selfnorm_tail([5], 0.9) == 0.5


@pytest.mark.parametrize("bad", [[1, 0], [-1, 2], [], [math.nan]])
def test_exact_reduction_rejects_nonpositive(bad):
    with pytest.raises(ArgumentError):
        exact_selfnorm_tail(bad, 1.0)


def test_model_parsing_and_validation():
    m = MagnitudeModel.parse("lognormal:n=5,mu=0,sigma=1")
    assert m.kind == "lognormal" and m.n == 5 and m.params == {"mu": 0.0, "sigma": 1.0}
    assert MagnitudeModel.parse("fixed:1,2").values == (1.0, 2.0)
    assert MagnitudeModel.parse("pareto:n=3").params == {"alpha": 3.0}
    for bad in ("cauchy:n=3", "lognormal:mu=0", "lognormal:n=3,sigma=0", "fixed:1,-1", "exponential:n=2,rate=1",
                "pareto:n=2,alpha=-1", "lognormal:n=2.5", "fixed:a"):
        with pytest.raises(ArgumentError):
            MagnitudeModel.parse(bad)


def test_fixed_model_agrees_with_exact():
    m = MagnitudeModel.fixed([1, 1])
    est = mc_selfnorm_tail(m, 1_000_000, seed=1, x=SQRT2)
    assert abs(est.estimate - 0.25) <= 4 * est.stderr
    for vals, x in (([3, 4], 1.0), ([1, 2, 3], 0.5), ([1, 1, 1, 1, 1], 1.2)):
        m = MagnitudeModel.fixed(vals)
        est = mc_selfnorm_tail(m, 200_000, seed=2, x=x)
        assert abs(est.estimate - exact_selfnorm_tail(vals, x)) <= 5 * est.stderr


def test_lognormal_bound():
    m = MagnitudeModel.sampler("lognormal", 5, mu=0.0, sigma=1.0)
    est = mc_selfnorm_tail(m, 1_000_000, seed=3, x=SQRT2)
    assert est.estimate <= C * normal_tail(SQRT2) + 3 * est.stderr


@pytest.mark.parametrize("spec", ["lognormal:n=5", "exponential:n=4", "pareto:n=6,alpha=1.5", "fixed:1,2,2"])
def test_bound_for_models(spec):
    m = MagnitudeModel.parse(spec)
    for x in (1.0, SQRT2, 2.0, 2.5):
        est = mc_selfnorm_tail(m, 100_000, seed=4, x=x)
        assert est.estimate <= C * normal_tail(x) + 4 * est.stderr


def test_far_left_threshold_gives_one():
    for spec in ("lognormal:n=5", "pareto:n=30", "fixed:1,1"):
        assert mc_selfnorm_tail(MagnitudeModel.parse(spec), 10_000, 0, -10.0).estimate == 1.0


def test_range_of_statistic():
    m = MagnitudeModel.parse("pareto:n=7,alpha=0.7")
    # x just above sqrt(n) is never reached
    assert mc_selfnorm_tail(m, 50_000, 9, math.sqrt(7) + 1e-9).estimate == 0.0


def test_seeded_and_independent_of_threads():
    m = MagnitudeModel.parse("exponential:n=3")
    a = mc_selfnorm_tail(m, 150_000, 7, 1.0)
    b = mc_selfnorm_tail(m, 150_000, 7, 1.0, threads=3)
    assert a == b
    assert a != mc_selfnorm_tail(m, 150_000, 8, 1.0)


def test_blocks_are_prefix_stable():
    # a partial last block is the prefix of the full block with the same index
    m = MagnitudeModel.parse("lognormal:n=2")
    full = _block_hits(m, 5, 0, BLOCK, -100.0)
    assert full == BLOCK
    assert _block_hits(m, 5, 0, 1000, 0.3) <= _block_hits(m, 5, 0, 2000, 0.3)


def test_sample_floor():
    with pytest.raises(ArgumentError):
        mc_selfnorm_tail(MagnitudeModel.fixed([1]), 9_999, 0, 0.0)
    with pytest.raises(ArgumentError):
        mc_selfnorm_tail(MagnitudeModel.fixed([1]), 10_000, 0, 0.0, threads=0)


def test_model_as_dict():
    assert MagnitudeModel.fixed([2, 1]).as_dict() == {"kind": "fixed", "n": 2, "values": [2.0, 1.0]}
    d = MagnitudeModel.parse("pareto:n=2,alpha=2").as_dict()
    assert d == {"kind": "pareto", "n": 2, "params": {"alpha": 2.0}}
    assert np.all(MagnitudeModel.parse("pareto:n=2").draw(np.random.default_rng(0), 10) >= 1.0)
