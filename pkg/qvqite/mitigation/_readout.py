from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import nnls

from qvqite.sim import Circuit, Counts, NoiseModel, X, sample_counts
from qvqite.utils import save_file, load_file

MIN_CALIBRATION_SHOTS: int = 1000


@dataclass(frozen=True)
class CalibrationMatrix:
    """Measured readout distributions: column j is the histogram observed when
    basis state j of ``qubits`` is prepared."""

    matrix: np.ndarray
    shots: int
    qubits: Tuple[int, ...]

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.float64)
        dim = 2 ** len(self.qubits)
        if matrix.shape != (dim, dim):
            raise ValueError(
                f"Calibration for {len(self.qubits)} qubits must be {dim}x{dim}, got {matrix.shape}"
            )
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def as_dict(self) -> dict:
        return {
            "qubits": list(self.qubits),
            "shots": self.shots,
            "matrix_row_major": self.matrix.reshape(-1).tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CalibrationMatrix":
        try:
            qubits = tuple(int(q) for q in d["qubits"])
            dim = 2 ** len(qubits)
            matrix = np.asarray(d["matrix_row_major"], dtype=np.float64).reshape(dim, dim)
            return cls(matrix=matrix, shots=int(d["shots"]), qubits=qubits)
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed calibration JSON: {e!r}")

    def save(self, filename: str) -> str:
        return save_file(self.as_dict(), {"json": "json"}, filename)

    @classmethod
    def load(cls, filename: str) -> "CalibrationMatrix":
        return cls.from_dict(load_file({"json": "json"}, filename))


def calibrate(
    n_qubits: int,
    shots: int,
    noise: Optional[NoiseModel],
    rng: np.random.Generator,
    qubits: Optional[Sequence[int]] = None,
) -> CalibrationMatrix:
    """Prepare every basis state of ``qubits`` with X gates and record the
    read-out frequencies. Only the readout part of ``noise`` is applied."""
    if shots < MIN_CALIBRATION_SHOTS:
        raise ValueError(
            f"Calibration needs at least {MIN_CALIBRATION_SHOTS} shots, got {shots}"
        )
    qubits = tuple(range(n_qubits)) if qubits is None else tuple(qubits)
    m = len(qubits)
    readout = None if noise is None else noise.readout_only()
    columns = []
    for j, child in zip(range(2**m), rng.spawn(2**m)):
        bits = format(j, f"0{m}b")
        prep = Circuit(n_qubits, [X(q) for q, b in zip(qubits, bits) if b == "1"])
        columns.append(sample_counts(prep, shots, child, readout, qubits).frequencies())
    return CalibrationMatrix(matrix=np.stack(columns, axis=1), shots=shots, qubits=qubits)


def mitigate_counts(raw, cal: CalibrationMatrix) -> np.ndarray:
    """Distribution x >= 0 minimizing ||cal·x - freq||, renormalized to sum 1."""
    freq = raw.frequencies() if isinstance(raw, Counts) else np.asarray(raw, dtype=np.float64)
    if freq.shape != (cal.dim,):
        raise ValueError(
            f"Histogram of length {freq.shape} does not match a {cal.dim}x{cal.dim} calibration"
        )
    if np.linalg.matrix_rank(cal.matrix) < cal.dim:
        raise ValueError("Calibration matrix is singular")
    x, _ = nnls(cal.matrix, freq)
    x = np.clip(x, 0.0, None)
    total = x.sum()
    if total <= 0:
        raise ValueError("Mitigated distribution vanishes")
    return x / total
