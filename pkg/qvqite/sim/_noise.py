import os
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from qvqite.utils import save_file, load_file

from ._circuit import Circuit
from ._gates import pauli_gate

DEFAULT_P10: float = 0.02
DEFAULT_P01: float = 0.03
DEFAULT_DEPOL_1Q: float = 5e-4
DEFAULT_DEPOL_2Q: float = 0.01


@dataclass(frozen=True)
class NoiseModel:
    """Readout confusion per qubit plus per-gate depolarizing probabilities.

    ``readout`` holds ``(p10, p01)`` pairs: p10 = P(read 1 | true 0) and
    p01 = P(read 0 | true 1). A single pair applies to every qubit.
    """

    readout: Tuple[Tuple[float, float], ...] = ()
    depol_1q: float = 0.0
    depol_2q: float = 0.0

    def __post_init__(self):
        readout = tuple((float(a), float(b)) for a, b in self.readout)
        for p10, p01 in readout:
            if not (0 <= p10 < 1 and 0 <= p01 < 1):
                raise ValueError(f"Readout probabilities must be in [0, 1), got {(p10, p01)}")
            if p10 + p01 >= 1:
                raise ValueError(
                    f"Readout pair {(p10, p01)} is not invertible (p10 + p01 >= 1)"
                )
        for name in ("depol_1q", "depol_2q"):
            p = float(getattr(self, name))
            if not 0 <= p <= 1:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
            object.__setattr__(self, name, p)
        object.__setattr__(self, "readout", readout)

    @property
    def has_readout(self) -> bool:
        return any(p10 > 0 or p01 > 0 for p10, p01 in self.readout)

    @property
    def has_depolarizing(self) -> bool:
        return self.depol_1q > 0 or self.depol_2q > 0

    @property
    def is_noiseless(self) -> bool:
        return not (self.has_readout or self.has_depolarizing)

    def readout_pair(self, qubit: int) -> Tuple[float, float]:
        if len(self.readout) == 0:
            return (0.0, 0.0)
        if len(self.readout) == 1:
            return self.readout[0]
        if qubit >= len(self.readout):
            raise ValueError(
                f"Noise model has readout data for {len(self.readout)} qubits, asked for qubit {qubit}"
            )
        return self.readout[qubit]

    def confusion(self, qubits: Sequence[int]) -> np.ndarray:
        """Forward readout matrix over ``qubits``; column j is the read-out
        distribution for true outcome j (big-endian over ``qubits``)."""
        R = np.ones((1, 1))
        for q in qubits:
            p10, p01 = self.readout_pair(q)
            R = np.kron(R, np.array([[1 - p10, p01], [p10, 1 - p01]]))
        return R

    def gate_rate(self, n_gate_qubits: int) -> float:
        return self.depol_1q if n_gate_qubits == 1 else self.depol_2q

    def readout_only(self) -> "NoiseModel":
        return replace(self, depol_1q=0.0, depol_2q=0.0)

    def without_readout(self) -> "NoiseModel":
        return replace(self, readout=())

    def as_dict(self) -> dict:
        return {
            "readout": [{"p10": p10, "p01": p01} for p10, p01 in self.readout],
            "depol_1q": self.depol_1q,
            "depol_2q": self.depol_2q,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NoiseModel":
        try:
            readout = d.get("readout", [])
            if isinstance(readout, dict):
                readout = [readout]
            return cls(
                readout=tuple((float(r["p10"]), float(r["p01"])) for r in readout),
                depol_1q=float(d.get("depol_1q", 0.0)),
                depol_2q=float(d.get("depol_2q", 0.0)),
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ValueError(f"Malformed noise model: {e!r}")

    def save(self, filename: str) -> str:
        return save_file(self.as_dict(), {"json": "json"}, filename)

    @classmethod
    def load(cls, filename: str) -> "NoiseModel":
        return cls.from_dict(load_file({"json": "json"}, filename))


PRESETS = {
    "none": NoiseModel(),
    "default-readout": NoiseModel(readout=((DEFAULT_P10, DEFAULT_P01),)),
    "default-depol": NoiseModel(depol_1q=DEFAULT_DEPOL_1Q, depol_2q=DEFAULT_DEPOL_2Q),
    "default-full": NoiseModel(
        readout=((DEFAULT_P10, DEFAULT_P01),),
        depol_1q=DEFAULT_DEPOL_1Q,
        depol_2q=DEFAULT_DEPOL_2Q,
    ),
}


def noise_from_spec(spec: Union[None, str, dict, NoiseModel]) -> Optional[NoiseModel]:
    """Preset name, JSON file path, dict, or model; ``None`` and "none" give no noise."""
    if spec is None or isinstance(spec, NoiseModel):
        return spec
    if isinstance(spec, dict):
        return NoiseModel.from_dict(spec)
    if spec in PRESETS:
        return None if spec == "none" else PRESETS[spec]
    if os.path.isfile(spec):
        return NoiseModel.load(spec)
    raise ValueError(
        f"Noise `{spec}` is neither a preset ({list(PRESETS.keys())}) nor an existing JSON file"
    )


def pauli_label(code: int, arity: int) -> str:
    """Base-4 digits of ``code`` over ``arity`` qubits, most significant first."""
    digits = []
    for _ in range(arity):
        digits.append("IXYZ"[code % 4])
        code //= 4
    return "".join(reversed(digits))


def draw_fault_codes(circuit: Circuit, noise: NoiseModel, rng: np.random.Generator, shots: int) -> np.ndarray:
    """(shots, n_gates) array of fault codes; column j is drawn over gate j's qubits."""
    codes = np.zeros((shots, len(circuit.gates)), dtype=np.int64)
    for j, g in enumerate(circuit.gates):
        k = len(g.qubits)
        p = noise.gate_rate(k)
        if p <= 0:
            continue
        hit = rng.random(shots) < p
        which = rng.integers(1, 4**k, size=shots)
        codes[:, j] = np.where(hit, which, 0)
    return codes


def insert_faults(circuit: Circuit, codes: Sequence[int]) -> Circuit:
    gates = []
    for g, code in zip(circuit.gates, codes):
        gates.append(g)
        if code:
            gates.append(pauli_gate(pauli_label(int(code), len(g.qubits)), g.qubits))
    return Circuit(circuit.n_qubits, gates)


def apply_depolarizing(circuit: Circuit, noise: NoiseModel, rng: np.random.Generator) -> Circuit:
    """One trajectory: after each gate, with its depolarizing rate, a random
    non-identity Pauli on the gate's qubits."""
    if not noise.has_depolarizing:
        return circuit
    return insert_faults(circuit, draw_fault_codes(circuit, noise, rng, 1)[0])
