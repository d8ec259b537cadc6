import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple, Union

import torch

# kinds whose matrix depends on an angle
ROTATIONS = ("RX", "RY")
FIXED = ("H", "X", "Y", "Z", "SWAP", "PAULI")
KINDS = ROTATIONS + FIXED


@dataclass(frozen=True)
class Param:
    """Reference to component ``slot`` of the parameter vector, times ``sign``."""

    slot: int
    sign: float = 1.0

    def resolve(self, theta: Sequence[float]) -> float:
        if self.slot >= len(theta):
            raise ValueError(
                f"Parameter slot {self.slot} is unbound (got {len(theta)} values)"
            )
        return self.sign * float(theta[self.slot])

    def __neg__(self) -> "Param":
        return Param(self.slot, -self.sign)


@lru_cache(maxsize=None)
def _fixed_matrix(kind: str, label: Optional[str]) -> torch.Tensor:
    s = 1.0 / math.sqrt(2.0)
    if kind == "H":
        return torch.tensor([[s, s], [s, -s]], dtype=torch.complex128)
    if kind == "X":
        return torch.tensor([[0, 1], [1, 0]], dtype=torch.complex128)
    if kind == "Y":
        return torch.tensor([[0, -1j], [1j, 0]], dtype=torch.complex128)
    if kind == "Z":
        return torch.tensor([[1, 0], [0, -1]], dtype=torch.complex128)
    if kind == "SWAP":
        return torch.tensor(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
            dtype=torch.complex128,
        )
    if kind == "PAULI":
        from qvqite.pauliops import PauliString

        return PauliString(label).matrix()
    raise ValueError(f"Unknown gate kind `{kind}`")


def rotation_matrix(kind: str, angle: float) -> torch.Tensor:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    if kind == "RY":
        return torch.tensor([[c, -s], [s, c]], dtype=torch.complex128)
    if kind == "RX":
        return torch.tensor([[c, -1j * s], [-1j * s, c]], dtype=torch.complex128)
    raise ValueError(f"Unknown rotation `{kind}`")


@dataclass(frozen=True)
class Gate:
    """A gate on ``targets``, optionally controlled on ``controls`` being |1>.

    ``param`` is the rotation angle for RX/RY, either a number or a
    :class:`Param`. ``label`` is the Pauli string of a PAULI gate.
    """

    kind: str
    targets: Tuple[int, ...]
    controls: Tuple[int, ...] = ()
    param: Union[None, float, Param] = None
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", self.kind.upper())
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        if self.kind not in KINDS:
            raise ValueError(f"Unknown gate kind `{self.kind}`; expected one of {KINDS}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"Gate {self.kind} acts twice on the same qubit: {self.qubits}")
        n_targets = {"SWAP": 2, "PAULI": len(self.label or "")}.get(self.kind, 1)
        if len(self.targets) != n_targets:
            raise ValueError(
                f"Gate {self.kind} needs {n_targets} target(s), got {self.targets}"
            )
        if self.kind in ROTATIONS and self.param is None:
            raise ValueError(f"Rotation {self.kind} needs an angle or a Param")

    @property
    def qubits(self) -> Tuple[int, ...]:
        return self.controls + self.targets

    @property
    def is_bound(self) -> bool:
        return not isinstance(self.param, Param)

    def angle(self, theta: Optional[Sequence[float]] = None) -> float:
        if isinstance(self.param, Param):
            if theta is None:
                raise ValueError(f"Gate {self.kind} has unbound slot {self.param.slot}")
            return self.param.resolve(theta)
        return float(self.param)

    def bind(self, theta: Sequence[float]) -> "Gate":
        if isinstance(self.param, Param):
            return replace(self, param=self.param.resolve(theta))
        return self

    def matrix(self, theta: Optional[Sequence[float]] = None) -> torch.Tensor:
        """Unitary on the targets only (controls excluded)."""
        if self.kind in ROTATIONS:
            return rotation_matrix(self.kind, self.angle(theta))
        return _fixed_matrix(self.kind, self.label)

    def dense(self, theta: Optional[Sequence[float]] = None) -> torch.Tensor:
        """Matrix on ``controls + targets`` in that (big-endian) order: block-diag(I, U)."""
        U = self.matrix(theta)
        if len(self.controls) == 0:
            return U
        dim = 2 ** len(self.qubits)
        out = torch.eye(dim, dtype=torch.complex128)
        out[dim - U.shape[0] :, dim - U.shape[0] :] = U
        return out

    def inverse(self) -> "Gate":
        if self.kind in ROTATIONS:
            return replace(self, param=-self.param)
        # every fixed kind is Hermitian
        return self

    def controlled(self, control: int) -> "Gate":
        return replace(self, controls=(int(control),) + self.controls)

    def remap(self, mapping: Dict[int, int]) -> "Gate":
        return replace(
            self,
            targets=tuple(mapping[q] for q in self.targets),
            controls=tuple(mapping[q] for q in self.controls),
        )

    def __str__(self) -> str:
        name = "C" * len(self.controls) + (self.label if self.kind == "PAULI" else self.kind)
        arg = ""
        if self.param is not None:
            arg = (
                f"({'-' if self.param.sign < 0 else ''}θ{self.param.slot})"
                if isinstance(self.param, Param)
                else f"({float(self.param):.6g})"
            )
        return f"{name}{arg}{list(self.qubits)}"


# constructors
def RY(q: int, param) -> Gate:
    return Gate("RY", (q,), param=param)


def RX(q: int, param) -> Gate:
    return Gate("RX", (q,), param=param)


def H(q: int) -> Gate:
    return Gate("H", (q,))


def X(q: int) -> Gate:
    return Gate("X", (q,))


def CNOT(control: int, target: int) -> Gate:
    return Gate("X", (target,), controls=(control,))


def CSWAP(control: int, a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b), controls=(control,))


def pauli_gate(label: str, qubits: Sequence[int]) -> Gate:
    return Gate("PAULI", tuple(qubits), label=label)
