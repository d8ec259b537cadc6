import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ._circuit import Circuit
from ._gates import H, RX, pauli_gate
from ._noise import NoiseModel, draw_fault_codes, pauli_label
from ._state import StateVector, run


@dataclass(frozen=True)
class Counts:
    """Histogram over the outcomes of ``qubits``; entry j is the big-endian index."""

    counts: np.ndarray
    qubits: Tuple[int, ...]

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (2 ** len(self.qubits),):
            raise ValueError(
                f"Histogram of length {counts.shape} does not match {len(self.qubits)} qubits"
            )
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def shots(self) -> int:
        return int(self.counts.sum())

    def frequencies(self) -> np.ndarray:
        return self.counts / max(self.shots, 1)

    def marginal(self, positions: Sequence[int]) -> "Counts":
        """Histogram of a subset, given as positions within ``qubits``."""
        m = len(self.qubits)
        c = self.counts.reshape((2,) * m)
        others = tuple(i for i in range(m) if i not in positions)
        c = c.sum(axis=others) if len(others) > 0 else c
        remaining = sorted(positions)
        c = np.transpose(c, [remaining.index(p) for p in positions])
        return Counts(c.reshape(-1), tuple(self.qubits[p] for p in positions))

    def outcomes(self) -> np.ndarray:
        """Per-shot outcome indices, grouped by outcome."""
        return np.repeat(np.arange(len(self.counts)), self.counts)

    def as_dict(self) -> Dict[str, int]:
        m = len(self.qubits)
        return {
            format(j, f"0{m}b") if m > 0 else "": int(c)
            for j, c in enumerate(self.counts)
            if c > 0
        }


def parity_signs(n_bits: int) -> np.ndarray:
    """(-1)^popcount(j) for j < 2^n_bits."""
    j = np.arange(2**n_bits)
    parity = np.zeros_like(j)
    for b in range(n_bits):
        parity ^= (j >> b) & 1
    return 1.0 - 2.0 * parity


def apply_readout(
    counts: np.ndarray,
    qubits: Sequence[int],
    noise: Optional[NoiseModel],
    rng: np.random.Generator,
) -> np.ndarray:
    """Redistribute each true outcome's counts over its confusion column."""
    if noise is None or not noise.has_readout:
        return counts
    R = noise.confusion(qubits)
    out = np.zeros_like(counts)
    for j, c in enumerate(counts):
        if c > 0:
            out += rng.multinomial(int(c), R[:, j] / R[:, j].sum())
    return out


def measure_counts(
    psi: StateVector,
    shots: int,
    rng: np.random.Generator,
    noise: Optional[NoiseModel] = None,
    qubits: Optional[Sequence[int]] = None,
) -> Counts:
    """Multinomial sample of the Born distribution followed by readout confusion."""
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    qubits = tuple(range(psi.n_qubits)) if qubits is None else tuple(qubits)
    p = psi.probabilities(qubits)
    p = np.clip(p, 0.0, None)
    counts = rng.multinomial(shots, p / p.sum())
    return Counts(apply_readout(counts, qubits, noise, rng), qubits)


def sample_counts(
    circuit: Circuit,
    shots: int,
    rng: np.random.Generator,
    noise: Optional[NoiseModel] = None,
    qubits: Optional[Sequence[int]] = None,
) -> Counts:
    """Shot histogram of a bound circuit under trajectory depolarizing noise.

    Every shot draws its own fault pattern. Shots sharing a pattern share one
    state-vector simulation, which resumes from the cached fault-free state
    just before its first fault.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    qubits = tuple(range(circuit.n_qubits)) if qubits is None else tuple(qubits)
    if noise is None or not noise.has_depolarizing:
        return measure_counts(run(circuit), shots, rng, noise, qubits)

    codes = draw_fault_codes(circuit, noise, rng, shots)
    patterns, multiplicity = np.unique(codes, axis=0, return_counts=True)

    # prefix[k] = state after the first k gates without faults
    prefix = [StateVector(circuit.n_qubits)]
    for g in circuit.gates:
        prefix.append(prefix[-1].copy().apply(g))

    counts = np.zeros(2 ** len(qubits), dtype=np.int64)
    for pattern, n_shots in zip(patterns, multiplicity):
        faulty = np.nonzero(pattern)[0]
        if len(faulty) == 0:
            psi = prefix[-1]
        else:
            first = int(faulty[0])
            psi = prefix[first + 1].copy()
            for j in range(first, len(circuit.gates)):
                if j > first:
                    psi.apply(circuit.gates[j])
                if pattern[j]:
                    g = circuit.gates[j]
                    psi.apply(pauli_gate(pauli_label(int(pattern[j]), len(g.qubits)), g.qubits))
        p = np.clip(psi.probabilities(qubits), 0.0, None)
        counts += rng.multinomial(int(n_shots), p / p.sum())
    return Counts(apply_readout(counts, qubits, noise, rng), qubits)


def basis_rotation(string, n_qubits: int) -> Circuit:
    """Gates mapping a Z-basis measurement onto the Pauli string: H for X,
    RX(π/2) for Y."""
    gates = []
    for q, op in enumerate(str(string)):
        if op == "X":
            gates.append(H(q))
        elif op == "Y":
            gates.append(RX(q, math.pi / 2))
    return Circuit(n_qubits, gates)


def parity_expectation(freq: np.ndarray, n_bits: int) -> float:
    return float(np.dot(freq, parity_signs(n_bits)))


def expval_sampled(
    S,
    circuit: Circuit,
    theta: Optional[Sequence[float]],
    config,
    rng: np.random.Generator,
    calibrations: Optional[dict] = None,
) -> Tuple[float, float]:
    """Shot estimate of <ψ|S|ψ> with its standard error.

    Each non-identity string gets ``config.shots`` shots of its own rotated
    circuit and its own child stream of ``rng``; the identity is added exactly.
    """
    if not S.is_hermitian():
        raise ValueError("expval_sampled needs a Hermitian PauliSum")
    bound = circuit.bind(theta)
    noise = config.noise
    value, variance = 0.0, 0.0
    streams = rng.spawn(len(S.terms))
    for (coeff, string), term_rng in zip(S.terms, streams):
        c = coeff.real
        if string.is_identity():
            value += c
            continue
        support = string.support
        counts = sample_counts(
            bound + basis_rotation(string, bound.n_qubits),
            config.shots,
            term_rng,
            noise,
            qubits=support,
        )
        freq = counts.frequencies()
        if config.mitigate_readout and noise is not None and noise.has_readout:
            from qvqite.mitigation import calibrate, mitigate_counts

            cal = None if calibrations is None else calibrations.get(support)
            if cal is None:
                cal = calibrate(
                    bound.n_qubits, max(config.shots, 1000), noise, term_rng, qubits=support
                )
                if calibrations is not None:
                    calibrations[support] = cal
            freq = mitigate_counts(counts, cal)
        m = parity_expectation(freq, len(support))
        value += c * m
        variance += c * c * max(1.0 - m * m, 0.0) / config.shots
    return value, math.sqrt(variance)
