import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from functools import partial
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from tqdm.auto import tqdm

from qvqite.pauliops import PauliSum
from qvqite.sim import Executor, RunConfig, ansatz
from qvqite.utils import ConvergenceError, parallel_map

from ._config import EvolutionConfig
from ._mclachlan import check_penalty, overlap, step


@dataclass(frozen=True)
class StepRecord:
    step: int
    tau: float
    theta: Tuple[float, ...]
    E: float
    theta_dot_norm: float
    condition: float


@dataclass
class EvolutionTrace:
    records: List[StepRecord] = field(default_factory=list)
    converged: bool = False
    theta_star: Tuple[float, ...] = ()
    E_star: float = float("nan")
    stop_reason: str = ""

    @property
    def energies(self) -> np.ndarray:
        return np.array([r.E for r in self.records])

    def __len__(self) -> int:
        return len(self.records)


class ConvergenceMonitor:
    """
    Stop condition on the energy history

    Stops when the energy changed by less than ``tol`` over the last
    ``window`` steps.

    Args:

    tol (float): threshold on |E_k - E_{k-window}|
    window (int): lag of the comparison
    """

    def __init__(self, tol: float, window: int = 10):
        if window < 1:
            raise ValueError("Argument window should be a positive integer.")
        if tol <= 0.0:
            raise ValueError("Argument tol should be positive.")
        self.tol = tol
        self.window = window
        self.history: List[float] = []

    def __call__(self, E: float):
        stop = False
        stop_args = "Converged:"
        debug_args = None

        self.history.append(E)
        if len(self.history) > self.window:
            change = abs(self.history[-1] - self.history[-1 - self.window])
            debug_args = f"ConvergenceMonitor: change {change:.3e} / {self.tol}"
            if change < self.tol:
                stop_args += f" energy changed by {change:.3e} over {self.window} steps"
                stop = True
        return stop, stop_args, debug_args

    def state_dict(self) -> "OrderedDict[str, list]":
        return OrderedDict([("history", list(self.history))])

    def load_state_dict(self, state_dict: Mapping) -> None:
        self.history = list(state_dict["history"])


def evolve(
    H: PauliSum,
    config: EvolutionConfig = EvolutionConfig(),
    deflation: Sequence[Sequence[float]] = (),
    executor: Optional[Executor] = None,
    theta_init: Optional[Sequence[float]] = None,
    progress: Optional[bool] = False,
) -> EvolutionTrace:
    """Imaginary-time evolution of the ansatz toward the lowest state of H
    orthogonal to the ``deflation`` states.

    Exact mode stops on the energy-change criterion; sampled mode runs all
    ``max_steps`` and reports the mean of the last ``stop_window`` energies.
    """
    executor = Executor() if executor is None else executor
    if len(deflation) > 0:
        check_penalty(H, config)
    theta = np.array(config.theta_init if theta_init is None else theta_init, dtype=np.float64)
    monitor = ConvergenceMonitor(config.stop_tol, config.stop_window)
    trace = EvolutionTrace()

    for k in tqdm(
        range(config.max_steps + 1),
        desc=f"vqite level {len(deflation) + 1}",
        disable=True if progress is False else None,
    ):
        E = executor.expectation(H, ansatz(theta))[0]
        if k == config.max_steps:
            trace.records.append(StepRecord(k, k * config.dtau, tuple(theta), E, 0.0, float("nan")))
            trace.stop_reason = f"reached max_steps={config.max_steps}"
            break
        theta_next, system = step(theta, H, deflation, config, executor)
        trace.records.append(
            StepRecord(
                step=k,
                tau=k * config.dtau,
                theta=tuple(float(t) for t in theta),
                E=E,
                theta_dot_norm=system.theta_dot_norm,
                condition=system.condition,
            )
        )
        logging.debug(f"vqite step {k}: E={E:.8f} |theta_dot|={system.theta_dot_norm:.3e}")
        if executor.exact:
            stop, stop_args, debug_args = monitor(E)
            if debug_args is not None:
                logging.debug(debug_args)
            if stop:
                trace.converged = True
                trace.stop_reason = stop_args
                break
        theta = theta_next

    last = trace.records[-1]
    trace.theta_star = last.theta
    if executor.exact:
        trace.E_star = last.E
    else:
        trace.converged = True
        trace.E_star = float(trace.energies[-config.stop_window :].mean())
    logging.info(
        f"vqite level {len(deflation) + 1}: E*={trace.E_star:.6f} after {len(trace) - 1} steps ({trace.stop_reason})"
    )
    return trace


@dataclass(frozen=True)
class Level:
    theta: Tuple[float, ...]
    E: float
    trace: EvolutionTrace


def spectrum(
    H: PauliSum,
    config: EvolutionConfig = EvolutionConfig(),
    n_states: int = 4,
    executor: Optional[Executor] = None,
    progress: Optional[bool] = False,
    deflation: Sequence[Sequence[float]] = (),
) -> List[Level]:
    """Lowest ``n_states`` levels by successive deflation, sorted by energy.

    States in ``deflation`` (known levels, e.g. from an earlier run) are
    penalized from the start.

    Raises :class:`ConvergenceError` with the finished levels in ``partial``
    if any level fails to converge.
    """
    executor = Executor() if executor is None else executor
    known = [tuple(float(t) for t in phi) for phi in deflation]
    if not 1 <= n_states <= 2**H.n_qubits - len(known):
        raise ValueError(
            f"n_states must be in [1, {2**H.n_qubits - len(known)}] with {len(known)} known states, got {n_states}"
        )
    if n_states + len(known) > 1:
        check_penalty(H, config)
    levels: List[Level] = []
    for level in range(n_states):
        trace = evolve(
            H,
            config,
            deflation=known + [lv.theta for lv in levels],
            executor=executor.spawn("level", level),
            progress=progress,
        )
        if not trace.converged:
            partial_levels = sorted(levels, key=lambda lv: lv.E)
            raise ConvergenceError(
                f"Level {level + 1} did not converge: {trace.stop_reason}",
                partial=partial_levels + [Level(trace.theta_star, trace.E_star, trace)],
            )
        levels.append(Level(trace.theta_star, trace.E_star, trace))
    return sorted(levels, key=lambda lv: lv.E)


def pairwise_overlaps(levels: Sequence[Level], executor: Optional[Executor] = None) -> np.ndarray:
    executor = Executor() if executor is None else executor
    n = len(levels)
    out = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = overlap(levels[i].theta, levels[j].theta, executor)
    return out


def _trial(
    trial: int,
    H: PauliSum,
    config: EvolutionConfig,
    run_config: RunConfig,
    n_states: int,
    deflation: Sequence[Sequence[float]] = (),
) -> List[Level]:
    return spectrum(
        H, config, n_states, Executor(run_config, ("trial", trial)), deflation=deflation
    )


def spectrum_trials(
    H: PauliSum,
    config: EvolutionConfig,
    run_config: RunConfig,
    n_states: int = 1,
    jobs: int = 1,
    deflation: Sequence[Sequence[float]] = (),
) -> List[List[Level]]:
    """Independent spectra, one per trial of ``run_config``; ordered by trial."""
    fn = partial(
        _trial,
        H=H,
        config=config,
        run_config=run_config,
        n_states=n_states,
        deflation=tuple(tuple(phi) for phi in deflation),
    )
    return parallel_map(fn, range(run_config.trials), jobs=jobs)
