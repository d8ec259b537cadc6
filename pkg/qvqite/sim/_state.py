from typing import Optional, Sequence

import numpy as np
import torch

from ._circuit import Circuit
from ._gates import Gate


def apply_matrix(psi: torch.Tensor, U: torch.Tensor, axes: Sequence[int]) -> torch.Tensor:
    """Contract a 2^k × 2^k unitary into the given axes of a (2,)*n tensor."""
    k = len(axes)
    U = U.reshape((2,) * (2 * k))
    out = torch.tensordot(U, psi, dims=(list(range(k, 2 * k)), list(axes)))
    return torch.movedim(out, list(range(k)), list(axes))


class StateVector:
    """Amplitudes of an n-qubit register as a complex128 tensor of shape (2,)*n.

    Axis k is qubit k, so the flattened vector is indexed big-endian.
    """

    def __init__(self, n_qubits: int, tensor: Optional[torch.Tensor] = None):
        self.n_qubits = n_qubits
        if tensor is None:
            tensor = torch.zeros((2,) * n_qubits, dtype=torch.complex128)
            tensor.view(-1)[0] = 1.0
        else:
            tensor = torch.as_tensor(tensor).to(torch.complex128).reshape((2,) * n_qubits)
        self.tensor = tensor

    @classmethod
    def from_vector(cls, vector) -> "StateVector":
        vector = torch.as_tensor(np.asarray(vector)).to(torch.complex128).reshape(-1)
        n = int(round(np.log2(vector.numel())))
        if 2**n != vector.numel():
            raise ValueError(f"State length {vector.numel()} is not a power of two")
        return cls(n, vector.clone())

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.tensor.clone())

    def vector(self) -> torch.Tensor:
        return self.tensor.reshape(-1)

    def norm(self) -> float:
        return float(torch.linalg.norm(self.vector()))

    def apply(self, gate: Gate, theta: Optional[Sequence[float]] = None) -> "StateVector":
        """Apply ``gate`` in place."""
        U = gate.matrix(theta)
        if len(gate.controls) == 0:
            self.tensor = apply_matrix(self.tensor, U, gate.targets)
            return self
        index = [slice(None)] * self.n_qubits
        for c in gate.controls:
            index[c] = 1
        # basic indexing gives a view of the control = 1 block
        sub = self.tensor[tuple(index)]
        axes = [t - sum(1 for c in gate.controls if c < t) for t in gate.targets]
        sub.copy_(apply_matrix(sub, U, axes))
        return self

    def probabilities(self, qubits: Optional[Sequence[int]] = None) -> np.ndarray:
        """Outcome distribution of the given qubits (all by default), big-endian."""
        p = (self.tensor.abs() ** 2).numpy()
        if qubits is None:
            return p.reshape(-1)
        qubits = list(qubits)
        others = tuple(q for q in range(self.n_qubits) if q not in qubits)
        p = p.sum(axis=others) if len(others) > 0 else p
        # remaining axes are in ascending qubit order; put them in the requested order
        remaining = sorted(qubits)
        p = np.transpose(p, [remaining.index(q) for q in qubits])
        return p.reshape(-1)


def run(
    circuit: Circuit,
    theta: Optional[Sequence[float]] = None,
    initial: Optional[StateVector] = None,
) -> StateVector:
    """Apply the gates of ``circuit`` to |0...0> (or a copy of ``initial``)."""
    psi = StateVector(circuit.n_qubits) if initial is None else initial.copy()
    for g in circuit.gates:
        psi.apply(g, theta)
    return psi
