"""Per-shot observables of folded transition circuits, for zero-noise extrapolation."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from qvqite.mitigation import fold
from qvqite.sim import Executor, NoiseModel, RunConfig, overlap_circuit

from ._amplitudes import ANCILLA, swap_test_circuit
from ._spec import TransitionSpec

ZNE_METHODS = ("direct", "swap")


def _shot_outcomes(executor: Executor, circuit, measured) -> np.ndarray:
    """Outcome index of every shot; with readout mitigation the corrected
    distribution is rounded back onto the shot count."""
    counts = executor.counts(circuit, measured)
    noise = executor.config.noise
    if executor.config.mitigate_readout and noise is not None and noise.has_readout:
        p = executor.mitigate(counts, circuit.n_qubits)
        n = np.floor(p * counts.shots).astype(np.int64)
        # hand the rounding remainder to the largest fractional parts
        short = counts.shots - int(n.sum())
        if short > 0:
            n[np.argsort(-(p * counts.shots - n), kind="stable")[:short]] += 1
        return np.repeat(np.arange(len(n)), n)
    return counts.outcomes()


def folded_outcomes(
    spec: TransitionSpec,
    method: str,
    scale: int,
    executor: Executor,
) -> np.ndarray:
    """Per-shot samples whose mean is the M1 observable at one folding scale:
    1/0 for outcome |00> of the direct circuit, ±1 for the swap-test ancilla."""
    if spec.kind != "M1":
        raise ValueError(f"Zero-noise extrapolation targets M1 transitions, got {spec.kind}")
    if method == "direct":
        circuit = fold(overlap_circuit(spec.initial.theta, spec.final.theta), scale)
        return (_shot_outcomes(executor, circuit, (0, 1)) == 0).astype(np.float64)
    if method == "swap":
        circuit = fold(swap_test_circuit(spec.initial.theta, spec.final.theta), scale)
        return np.where(_shot_outcomes(executor, circuit, (ANCILLA,)) == 0, 1.0, -1.0)
    raise ValueError(f"Unknown ZNE method `{method}`; expected one of {ZNE_METHODS}")


@dataclass(frozen=True)
class FoldedEvaluator:
    """``evaluate(scale, trial, noise)`` for :func:`qvqite.mitigation.zne`,
    with one random stream per (transition, method, scale, trial)."""

    spec: TransitionSpec
    method: str
    run_config: RunConfig

    def __call__(self, scale: int, trial: int, noise: Optional[NoiseModel]) -> np.ndarray:
        config = self.run_config.with_changes(mode="sampled", noise=noise)
        executor = Executor(config, ("zne", self.spec.name, self.method, scale, trial))
        return folded_outcomes(self.spec, self.method, scale, executor)


def make_evaluator(spec: TransitionSpec, method: str, run_config: RunConfig) -> FoldedEvaluator:
    if method not in ZNE_METHODS:
        raise ValueError(f"Unknown ZNE method `{method}`; expected one of {ZNE_METHODS}")
    return FoldedEvaluator(spec, method, run_config)
