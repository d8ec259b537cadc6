import hashlib
import math
from dataclasses import dataclass
from typing import Optional

import torch

from qvqite.utils import save_file, load_file

SOURCES = ("computed", "literal")
UNITS = ("fm^-1", "fm")


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense operator in the truncated oscillator basis.

    Despite the name this also carries the E1 operator (units ``fm``).
    """

    entries: torch.Tensor
    units: str = "fm^-1"
    source: str = "computed"
    channel: str = ""

    def __post_init__(self):
        entries = torch.as_tensor(self.entries).to(torch.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"Matrix must be square, got shape {tuple(entries.shape)}")
        if not torch.isfinite(torch.view_as_real(entries)).all():
            raise ValueError("Matrix entries must be finite")
        if self.units not in UNITS:
            raise ValueError(f"units must be one of {UNITS}, got {self.units!r}")
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}, got {self.source!r}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> Optional[int]:
        n = int(round(math.log2(self.dim))) if self.dim > 0 else 0
        return n if 2**n == self.dim else None

    def real(self) -> torch.Tensor:
        if self.entries.imag.abs().max() > 0:
            raise ValueError("Matrix has a nonzero imaginary part")
        return self.entries.real.clone()

    def is_symmetric(self, atol: float = 1e-12) -> bool:
        return bool(
            torch.allclose(self.entries, self.entries.transpose(0, 1), rtol=0, atol=atol)
        )

    def sha1(self) -> str:
        """Digest of the entries, for run manifests."""
        return hashlib.sha1(
            self.entries.contiguous().numpy().tobytes()
        ).hexdigest()

    def as_dict(self) -> dict:
        flat = self.entries.reshape(-1)
        return {
            "dim": self.dim,
            "units": self.units,
            "entries_row_major": [[float(z.real), float(z.imag)] for z in flat.tolist()],
            "source": self.source,
            "channel": self.channel,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HamiltonianMatrix":
        try:
            dim = int(d["dim"])
            pairs = d["entries_row_major"]
        except (KeyError, TypeError) as e:
            raise ValueError(f"Matrix JSON is missing field {e}")
        if len(pairs) != dim * dim:
            raise ValueError(
                f"Matrix JSON declares dim {dim} but has {len(pairs)} entries"
            )
        try:
            values = [complex(float(re), float(im)) for re, im in pairs]
        except (TypeError, ValueError):
            raise ValueError("entries_row_major must be a list of [re, im] pairs")
        entries = torch.tensor(values, dtype=torch.complex128).reshape(dim, dim)
        return cls(
            entries=entries,
            units=d.get("units", "fm^-1"),
            source=d.get("source", "computed"),
            channel=d.get("channel", ""),
        )

    def save(self, filename: str) -> str:
        return save_file(self.as_dict(), {"json": "json"}, filename)

    @classmethod
    def load(cls, filename: str) -> "HamiltonianMatrix":
        return cls.from_dict(load_file({"json": "json"}, filename))
