import numpy as np
import pytest

from qvqite.mitigation import FoldingPlan, zne
from qvqite.sim import Executor, NoiseModel, RunConfig
from qvqite.transitions import (
    E1_TRANSITIONS,
    M1_TRANSITIONS,
    ThetaSource,
    folded_outcomes,
    m1_direct,
    make_evaluator,
)
from qvqite.utils import stream

NOISE = NoiseModel(depol_1q=0.01, depol_2q=0.05)


@pytest.fixture(scope="module")
def spec():
    return ThetaSource().resolve(M1_TRANSITIONS[0])


@pytest.mark.parametrize("method", ["direct", "swap"])
def test_noiseless_mean(spec, method):
    executor = Executor(RunConfig(mode="sampled", shots=20000, seed=2))
    outcomes = folded_outcomes(spec, method, 3, executor)
    assert len(outcomes) == 20000
    assert set(np.unique(outcomes)) <= ({0.0, 1.0} if method == "direct" else {-1.0, 1.0})
    exact = m1_direct(spec).value
    assert abs(outcomes.mean() - exact) < 0.01


@pytest.mark.parametrize("method", ["direct", "swap"])
def test_noise_grows_with_scale(spec, method):
    evaluate = make_evaluator(spec, method, RunConfig(shots=4000, seed=5))
    low = evaluate(1, 0, NOISE).mean()
    high = evaluate(5, 0, NOISE).mean()
    assert high < low - 0.02


def test_extrapolation_moves_toward_ideal(spec):
    evaluate = make_evaluator(spec, "direct", RunConfig(shots=4000, seed=8))
    plan = FoldingPlan(scales=(1, 3, 5), orders=(1,), bootstrap=50)
    result = zne(evaluate, plan, NOISE, stream(8, "zne"), progress=False)
    ideal = m1_direct(spec).value
    assert abs(result.fit(1).value - ideal) < abs(result.means[0] - ideal)
    assert result.fit(1).bootstrap_std > 0


def test_readout_mitigated_outcomes(spec):
    config = RunConfig(
        mode="sampled", shots=3000, seed=4, noise="default-readout", mitigate_readout=True
    )
    outcomes = folded_outcomes(spec, "direct", 1, Executor(config))
    assert len(outcomes) == 3000
    raw = folded_outcomes(spec, "direct", 1, Executor(config.with_changes(mitigate_readout=False)))
    assert outcomes.mean() > raw.mean()


def test_reproducible(spec):
    evaluate = make_evaluator(spec, "swap", RunConfig(shots=5000, seed=1))
    assert np.array_equal(evaluate(3, 1, NOISE), evaluate(3, 1, NOISE))
    assert not np.array_equal(evaluate(3, 0, NOISE), evaluate(3, 1, NOISE))


def test_invalid(spec):
    executor = Executor(RunConfig(mode="sampled", shots=100))
    with pytest.raises(ValueError):
        folded_outcomes(spec, "hadamard", 1, executor)
    with pytest.raises(ValueError):
        folded_outcomes(ThetaSource().resolve(E1_TRANSITIONS[0]), "direct", 1, executor)
    with pytest.raises(ValueError):
        folded_outcomes(spec, "direct", 2, executor)


def test_parallel_matches_serial(spec):
    evaluate = make_evaluator(spec, "direct", RunConfig(shots=2000, seed=6))
    plan = FoldingPlan(scales=(1, 3), orders=(1,), trials=2, bootstrap=50)
    serial = zne(evaluate, plan, NOISE, stream(6, "zne"), progress=False)
    parallel = zne(evaluate, plan, NOISE, stream(6, "zne"), jobs=2)
    assert parallel.means == serial.means
    assert parallel.stderrs == serial.stderrs
    assert parallel.fit(1).value == serial.fit(1).value


def test_unknown_method(spec):
    with pytest.raises(ValueError):
        make_evaluator(spec, "hadamard", RunConfig())
