"""Pauli strings and weighted sums of them.

Qubit 0 is the most significant bit of a computational-basis index, so the
string "ZX" is Z ⊗ X and acts with Z on qubit 0.
"""

import math
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

import torch

from qvqite.utils import save_file, load_file

PAULI_LABELS: str = "IXYZ"
PRUNE_TOL: float = 1e-12


def _pauli_matrix(label: str) -> torch.Tensor:
    return {
        "I": torch.tensor([[1, 0], [0, 1]], dtype=torch.complex128),
        "X": torch.tensor([[0, 1], [1, 0]], dtype=torch.complex128),
        "Y": torch.tensor([[0, -1j], [1j, 0]], dtype=torch.complex128),
        "Z": torch.tensor([[1, 0], [0, -1]], dtype=torch.complex128),
    }[label]


@dataclass(frozen=True)
class PauliString:
    ops: str

    def __post_init__(self):
        ops = str(self.ops).upper()
        if len(ops) == 0 or any(c not in PAULI_LABELS for c in ops):
            raise ValueError(f"Invalid Pauli string `{self.ops}`")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, op: str) -> "PauliString":
        ops = ["I"] * n_qubits
        ops[qubit] = op
        return cls("".join(ops))

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.ops) if c != "I")

    def is_identity(self) -> bool:
        return len(self.support) == 0

    def matrix(self) -> torch.Tensor:
        return reduce(torch.kron, [_pauli_matrix(c) for c in self.ops])

    def apply(self, psi: torch.Tensor) -> torch.Tensor:
        """P|psi> for amplitudes of shape (2,)*n, without building the matrix."""
        if psi.ndim != self.n_qubits:
            raise ValueError(
                f"Pauli string on {self.n_qubits} qubits applied to a {psi.ndim}-qubit state"
            )
        out = psi
        phase = 1.0 + 0j
        for k, c in enumerate(self.ops):
            if c in "ZY":
                shape = [1] * psi.ndim
                shape[k] = 2
                sign = torch.tensor([1.0, -1.0], dtype=psi.dtype).reshape(shape)
                out = out * sign
            if c in "XY":
                out = torch.flip(out, dims=[k])
            if c == "Y":
                phase *= 1j
        return out * phase if phase != 1.0 else out

    def __str__(self) -> str:
        return self.ops

    def describe(self) -> str:
        """e.g. ``Z0X1``; ``I`` for the identity."""
        if self.is_identity():
            return "I"
        return "".join(f"{self.ops[k]}{k}" for k in self.support)


def _as_string(s: Union[str, PauliString]) -> PauliString:
    return s if isinstance(s, PauliString) else PauliString(s)


class PauliSum:
    """Sum of complex-weighted Pauli strings over ``n_qubits``.

    Duplicate strings are merged and coefficients below ``PRUNE_TOL`` are
    dropped; terms keep their first-seen order.
    """

    def __init__(
        self,
        terms: Iterable[Tuple[complex, Union[str, PauliString]]],
        n_qubits: Optional[int] = None,
    ):
        merged: Dict[PauliString, complex] = {}
        for coeff, string in terms:
            string = _as_string(string)
            if n_qubits is None:
                n_qubits = string.n_qubits
            elif string.n_qubits != n_qubits:
                raise ValueError(
                    f"Pauli string `{string}` does not act on {n_qubits} qubits"
                )
            merged[string] = merged.get(string, 0j) + complex(coeff)
        if n_qubits is None:
            raise ValueError("An empty PauliSum needs an explicit n_qubits")
        self.n_qubits: int = n_qubits
        self.terms: Tuple[Tuple[complex, PauliString], ...] = tuple(
            (c, s) for s, c in merged.items() if abs(c) >= PRUNE_TOL
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[complex, PauliString]]:
        return iter(self.terms)

    def __repr__(self) -> str:
        return f"PauliSum(n_qubits={self.n_qubits}, terms={len(self.terms)})"

    def coefficient(self, string: Union[str, PauliString]) -> complex:
        string = _as_string(string)
        for c, s in self.terms:
            if s == string:
                return c
        return 0j

    def as_map(self) -> Dict[str, complex]:
        return {s.ops: c for c, s in self.terms}

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("Cannot add PauliSums on different registers")
        return PauliSum(self.terms + other.terms, n_qubits=self.n_qubits)

    def __mul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(
            [(complex(scalar) * c, s) for c, s in self.terms], n_qubits=self.n_qubits
        )

    __rmul__ = __mul__

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        M = reconstruct(self)
        return bool(torch.allclose(M, M.conj().transpose(0, 1), rtol=0, atol=atol))

    def as_dict(self) -> dict:
        return {
            "n": self.n_qubits,
            "terms": [
                {"coeff": [c.real, c.imag], "string": s.ops} for c, s in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PauliSum":
        try:
            n = int(d["n"])
            terms = [
                (complex(float(t["coeff"][0]), float(t["coeff"][1])), t["string"])
                for t in d["terms"]
            ]
        except (KeyError, TypeError, IndexError) as e:
            raise ValueError(f"Malformed PauliSum JSON: {e!r}")
        return cls(terms, n_qubits=n)

    def save(self, filename: str) -> str:
        return save_file(self.as_dict(), {"json": "json"}, filename)

    @classmethod
    def load(cls, filename: str) -> "PauliSum":
        return cls.from_dict(load_file({"json": "json"}, filename))


def all_strings(n_qubits: int) -> List[PauliString]:
    """All 4^n strings, lexicographic in ``IXYZ`` with qubit 0 varying slowest."""
    return [PauliString("".join(p)) for p in product(PAULI_LABELS, repeat=n_qubits)]


def decompose(M) -> PauliSum:
    """Coefficients Tr(P M) / 2^n over all Pauli strings P."""
    if hasattr(M, "entries"):
        M = M.entries
    M = torch.as_tensor(M).to(torch.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"decompose needs a square matrix, got shape {tuple(M.shape)}")
    dim = M.shape[0]
    n = int(round(math.log2(dim))) if dim > 0 else -1
    if n < 1 or 2**n != dim:
        raise ValueError(f"Matrix dimension {dim} is not a power of two")
    terms = []
    for string in all_strings(n):
        # Tr(P M) = sum_ij P_ji M_ij
        coeff = (string.matrix().transpose(0, 1) * M).sum() / dim
        terms.append((complex(coeff), string))
    return PauliSum(terms, n_qubits=n)


def reconstruct(S: PauliSum) -> torch.Tensor:
    dim = 2**S.n_qubits
    M = torch.zeros((dim, dim), dtype=torch.complex128)
    for c, s in S.terms:
        M = M + c * s.matrix()
    return M


def _amplitudes(psi, n_qubits: int) -> torch.Tensor:
    t = psi.tensor if hasattr(psi, "tensor") else torch.as_tensor(psi)
    t = t.to(torch.complex128)
    if t.numel() != 2**n_qubits:
        raise ValueError(
            f"State with {t.numel()} amplitudes does not match a {n_qubits}-qubit operator"
        )
    return t.reshape((2,) * n_qubits)


def expval_exact(S: PauliSum, psi) -> complex:
    """<psi| S |psi> accumulated term by term."""
    t = _amplitudes(psi, S.n_qubits)
    total = 0j
    for c, s in S.terms:
        total += c * complex(torch.vdot(t.reshape(-1), s.apply(t).reshape(-1)))
    return total


def matrix_element(S: PauliSum, bra, ket) -> complex:
    """<bra| S |ket>."""
    b = _amplitudes(bra, S.n_qubits).reshape(-1)
    k = _amplitudes(ket, S.n_qubits)
    total = 0j
    for c, s in S.terms:
        total += c * complex(torch.vdot(b, s.apply(k).reshape(-1)))
    return total


def format_table(S: PauliSum, digits: int = 4) -> str:
    """Human readable coefficient listing, one term per line."""
    lines = [f"{'term':<10} {'string':<{max(6, S.n_qubits)}} {'real':>12} {'imag':>12}"]
    for c, s in S.terms:
        lines.append(
            f"{s.describe():<10} {s.ops:<{max(6, S.n_qubits)}} {c.real:>12.{digits}f} {c.imag:>12.{digits}f}"
        )
    return "\n".join(lines)
