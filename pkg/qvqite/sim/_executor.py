import math
from dataclasses import dataclass, replace
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from qvqite.pauliops import PauliSum, expval_exact
from qvqite.utils import stream

from ._circuit import Circuit
from ._noise import NoiseModel, noise_from_spec
from ._sampling import Counts, expval_sampled, sample_counts
from ._state import run

MODES = ("exact", "sampled")


@dataclass(frozen=True)
class RunConfig:
    """How quantities are evaluated: exactly or from finite shots.

    Exact mode ignores ``shots``, ``noise`` and ``mitigate_readout``.
    """

    mode: str = "exact"
    shots: int = 20000
    seed: int = 0
    trials: int = 1
    noise: Optional[NoiseModel] = None
    mitigate_readout: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if int(self.shots) < 1:
            raise ValueError(f"shots must be at least 1, got {self.shots}")
        if int(self.trials) < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        object.__setattr__(self, "shots", int(self.shots))
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "noise", noise_from_spec(self.noise))

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def with_changes(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)

    @classmethod
    def from_config(cls, config) -> "RunConfig":
        return cls(
            mode=config.get("mode", "exact"),
            shots=config.get("shots", 20000),
            seed=config.get("seed", 0),
            trials=config.get("trials", 1),
            noise=config.get("noise", None),
            mitigate_readout=bool(config.get("mitigate_readout", False)),
        )


class Executor:
    """Evaluates probabilities and expectation values under a :class:`RunConfig`.

    Every sampled evaluation draws from its own stream keyed by the master
    seed, this executor's ids and a call counter, so a fixed sequence of calls
    reproduces bit-for-bit. Use :meth:`spawn` to give independent tasks
    (trials, transitions, scales) their own ids.
    """

    def __init__(
        self,
        config: RunConfig = RunConfig(),
        ids: Tuple = (),
        calibrations: Optional[Dict] = None,
    ):
        self.config = config
        self.ids = tuple(ids)
        self._calls = 0
        self._calibrations = {} if calibrations is None else calibrations

    @property
    def exact(self) -> bool:
        return self.config.exact

    def spawn(self, *ids) -> "Executor":
        return Executor(self.config, self.ids + ids, self._calibrations)

    def with_config(self, **kwargs) -> "Executor":
        return Executor(self.config.with_changes(**kwargs), self.ids, None)

    def next_rng(self) -> np.random.Generator:
        rng = stream(self.config.seed, *self.ids, self._calls)
        self._calls += 1
        return rng

    def _calibration(self, n_qubits: int, qubits: Tuple[int, ...]):
        from qvqite.mitigation import calibrate

        noise = self.config.noise
        key = (noise, qubits)
        if key not in self._calibrations:
            self._calibrations[key] = calibrate(
                n_qubits,
                max(self.config.shots, 1000),
                noise,
                stream(self.config.seed, "calibration", *qubits),
                qubits=qubits,
            )
        return self._calibrations[key]

    def counts(self, circuit: Circuit, measured: Optional[Sequence[int]] = None) -> Counts:
        """Raw noisy histogram of a bound circuit (sampled mode only)."""
        if self.exact:
            raise ValueError("Histograms are only available in sampled mode")
        measured = tuple(range(circuit.n_qubits)) if measured is None else tuple(measured)
        return sample_counts(
            circuit, self.config.shots, self.next_rng(), self.config.noise, measured
        )

    def mitigate(self, counts: Counts, n_qubits: int) -> np.ndarray:
        from qvqite.mitigation import mitigate_counts

        return mitigate_counts(counts, self._calibration(n_qubits, counts.qubits))

    def probabilities(
        self,
        circuit: Circuit,
        measured: Optional[Sequence[int]] = None,
        theta: Optional[Sequence[float]] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Outcome distribution of ``measured`` and its binomial standard errors."""
        circuit = circuit.bind(theta)
        measured = tuple(range(circuit.n_qubits)) if measured is None else tuple(measured)
        if self.exact:
            p = run(circuit).probabilities(measured)
            return p, np.zeros_like(p)
        counts = self.counts(circuit, measured)
        noise = self.config.noise
        if self.config.mitigate_readout and noise is not None and noise.has_readout:
            p = self.mitigate(counts, circuit.n_qubits)
        else:
            p = counts.frequencies()
        return p, np.sqrt(np.clip(p * (1 - p), 0.0, None) / self.config.shots)

    def probability(
        self,
        circuit: Circuit,
        outcome: int = 0,
        measured: Optional[Sequence[int]] = None,
        theta: Optional[Sequence[float]] = None,
    ) -> Tuple[float, float]:
        p, se = self.probabilities(circuit, measured, theta)
        return float(p[outcome]), float(se[outcome])

    def expectation(
        self,
        S: PauliSum,
        circuit: Circuit,
        theta: Optional[Sequence[float]] = None,
    ) -> Tuple[float, float]:
        """<ψ|S|ψ> for the state prepared by ``circuit``, with standard error."""
        if self.exact:
            value = expval_exact(S, run(circuit, theta))
            return value.real, 0.0
        calibrations = self._calibrations.setdefault(("expval", self.config.noise), {})
        return expval_sampled(
            S, circuit, theta, self.config, self.next_rng(), calibrations=calibrations
        )


def trial_summary(values: Sequence[float], errors: Sequence[float]) -> Tuple[float, float]:
    """Mean over trials; SE from the trial scatter when there is more than one."""
    values = np.asarray(values, dtype=np.float64)
    if len(values) > 1:
        return float(values.mean()), float(values.std(ddof=1) / math.sqrt(len(values)))
    return float(values[0]), float(errors[0])
