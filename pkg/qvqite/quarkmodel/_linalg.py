import math
from dataclasses import dataclass
from typing import Union

import torch

from qvqite.utils import ConvergenceError

from ._matrix import HamiltonianMatrix

_MAX_SWEEPS: int = 100


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenpairs in ascending order; column k of ``eigenvectors`` belongs to ``eigenvalues[k]``."""

    eigenvalues: torch.Tensor
    eigenvectors: torch.Tensor
    sweeps: int = 0

    def as_dict(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "eigenvectors": self.eigenvectors.transpose(0, 1).tolist(),
        }


def _as_real_symmetric(matrix, atol: float) -> torch.Tensor:
    if isinstance(matrix, HamiltonianMatrix):
        entries = matrix.entries
    else:
        entries = torch.as_tensor(matrix)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {tuple(entries.shape)}")
    if entries.is_complex():
        if entries.imag.abs().max() > 0:
            raise ValueError("diagonalize needs a real symmetric matrix, got complex entries")
        entries = entries.real
    A = entries.to(torch.float64).clone()
    if not torch.allclose(A, A.transpose(0, 1), rtol=0, atol=atol):
        raise ValueError("diagonalize needs a symmetric matrix")
    return 0.5 * (A + A.transpose(0, 1))


def diagonalize(
    matrix: Union[HamiltonianMatrix, torch.Tensor],
    tol: float = 1e-12,
    symmetry_atol: float = 1e-12,
) -> SpectrumResult:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Sweeps until the largest off-diagonal element is below ``tol``; raises
    ``ConvergenceError`` if that takes more than ``_MAX_SWEEPS`` sweeps. Each
    eigenvector is normalized and signed so that its largest-magnitude
    component is positive.
    """
    A = _as_real_symmetric(matrix, symmetry_atol)
    n = A.shape[0]
    V = torch.eye(n, dtype=torch.float64)

    sweeps = 0
    while True:
        off = A - torch.diag(torch.diagonal(A))
        if n < 2 or off.abs().max() < tol:
            break
        if sweeps >= _MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi did not converge in {_MAX_SWEEPS} sweeps, off-diagonal {off.abs().max():.3e}"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(A[p, q])
                if abs(apq) < 1e-300:
                    continue
                theta = float(A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                J = torch.eye(n, dtype=torch.float64)
                J[p, p] = c
                J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.transpose(0, 1) @ A @ J
                V = V @ J

    eigenvalues = torch.diagonal(A).clone()
    order = torch.argsort(eigenvalues)
    eigenvalues = eigenvalues[order]
    V = V[:, order]
    V = V / torch.linalg.norm(V, dim=0, keepdim=True)
    pivot = V.abs().argmax(dim=0)
    signs = torch.sign(V[pivot, torch.arange(n)])
    signs[signs == 0] = 1.0
    V = V * signs
    return SpectrumResult(eigenvalues=eigenvalues, eigenvectors=V, sweeps=sweeps)
