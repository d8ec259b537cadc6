import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ._gates import CNOT, RY, Gate, Param

N_ANSATZ_PARAMS: int = 3


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValueError(f"A circuit needs at least one qubit, got {self.n_qubits}")
        for g in self.gates:
            if any(q < 0 or q >= self.n_qubits for q in g.qubits):
                raise ValueError(
                    f"Gate {g} addresses a qubit outside the {self.n_qubits}-qubit register"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"Cannot concatenate circuits on {self.n_qubits} and {other.n_qubits} qubits"
            )
        return Circuit(self.n_qubits, self.gates + other.gates)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.gates)

    @property
    def slots(self) -> Tuple[int, ...]:
        return tuple(
            sorted({g.param.slot for g in self.gates if isinstance(g.param, Param)})
        )

    def append(self, *gates: Gate) -> "Circuit":
        return Circuit(self.n_qubits, self.gates + tuple(gates))

    def bind(self, theta: Optional[Sequence[float]]) -> "Circuit":
        if theta is None:
            return self
        return Circuit(self.n_qubits, tuple(g.bind(theta) for g in self.gates))

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def remap(self, mapping: Dict[int, int], n_qubits: int) -> "Circuit":
        """Relabel qubits into a register of ``n_qubits``."""
        return Circuit(n_qubits, tuple(g.remap(mapping) for g in self.gates))

    def controlled(self, control: int) -> "Circuit":
        """Every gate additionally controlled on ``control``."""
        return Circuit(self.n_qubits, tuple(g.controlled(control) for g in self.gates))

    def check_shift_rule(self):
        """Parameter-shift derivatives need each slot on one uncontrolled RX/RY."""
        seen = {}
        for g in self.gates:
            if not isinstance(g.param, Param):
                continue
            if g.kind not in ("RX", "RY") or len(g.controls) > 0:
                raise ValueError(
                    f"Gate {g} carries parameter slot {g.param.slot} but has no two-term shift rule"
                )
            if g.param.slot in seen:
                raise ValueError(f"Parameter slot {g.param.slot} appears in more than one gate")
            seen[g.param.slot] = g


def ansatz(
    theta: Optional[Sequence[float]] = None,
    qubits: Tuple[int, int] = (0, 1),
    n_qubits: Optional[int] = None,
    first_slot: int = 0,
) -> Circuit:
    """Two-qubit real ansatz RY(θ0) q0; CNOT(q0→q1); RY(θ1) q0; RY(θ2) q1.

    Without ``theta`` the rotation angles are parameter slots
    ``first_slot .. first_slot+2``.
    """
    if theta is None:
        angles = [Param(first_slot + k) for k in range(N_ANSATZ_PARAMS)]
    else:
        if len(theta) != N_ANSATZ_PARAMS:
            raise ValueError(f"The ansatz takes {N_ANSATZ_PARAMS} angles, got {len(theta)}")
        angles = [float(t) for t in theta]
    q0, q1 = qubits
    n = max(qubits) + 1 if n_qubits is None else n_qubits
    return Circuit(
        n,
        (RY(q0, angles[0]), CNOT(q0, q1), RY(q0, angles[1]), RY(q1, angles[2])),
    )


def overlap_circuit(theta_i, theta_f) -> Circuit:
    """U_f† U_i; the probability of |00> is |<ψ_f|ψ_i>|²."""
    return ansatz(theta_i) + ansatz(theta_f).inverse()


def ansatz_amplitudes(theta: Sequence[float]) -> np.ndarray:
    """Closed form of the ansatz state, big-endian amplitudes."""
    t0, t1, t2 = (float(t) for t in theta)

    def rot(t):
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -s], [s, c]])

    d = np.diag([math.cos(t0 / 2), math.sin(t0 / 2)])
    return (rot(t1) @ d @ rot(t2).T).reshape(-1)


def theta_from_amplitudes(vector: Sequence[float]) -> np.ndarray:
    """Angles whose ansatz state equals the given real 4-vector (up to norm).

    Inverts Ψ = R(θ1)·diag(cos θ0/2, sin θ0/2)·R(θ2)ᵀ through a singular value
    decomposition with both rotations forced to determinant +1.
    """
    v = np.asarray(vector, dtype=np.float64).reshape(-1)
    if v.shape != (4,):
        raise ValueError(f"Expected 4 real amplitudes, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("Cannot invert the zero vector")
    U, S, Vt = np.linalg.svd((v / norm).reshape(2, 2))
    V = Vt.T
    S = S.copy()
    if np.linalg.det(U) < 0:
        U[:, 1] *= -1
        S[1] *= -1
    if np.linalg.det(V) < 0:
        V[:, 1] *= -1
        S[1] *= -1
    return np.array(
        [
            2.0 * math.atan2(S[1], S[0]),
            2.0 * math.atan2(U[1, 0], U[0, 0]),
            2.0 * math.atan2(V[1, 0], V[0, 0]),
        ]
    )
