import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import torch

from qvqite.pauliops import PauliSum, reconstruct
from qvqite.sim import Executor, ansatz, overlap_circuit
from qvqite.utils import SolverBreakdown

from ._config import EvolutionConfig
from ._derivatives import gradient, hessian

PINV_RTOL: float = 1e-8


def gershgorin_range(H: PauliSum) -> float:
    """Upper bound on the spectral width of H from Gershgorin discs."""
    M = reconstruct(H)
    center = M.diagonal().real
    radius = M.abs().sum(dim=1) - M.diagonal().abs()
    return float((center + radius).max() - (center - radius).min())


def check_penalty(H: PauliSum, config: EvolutionConfig):
    width = gershgorin_range(H)
    if config.penalty_alpha <= width:
        raise ValueError(
            f"penalty_alpha={config.penalty_alpha} does not exceed the spectral range bound {width:.4g} of H"
        )


def overlap(theta, phi, executor: Executor) -> float:
    """|<ψ(φ)|ψ(θ)>|² as the |00> probability of the overlap circuit."""
    return executor.probability(overlap_circuit(theta, phi), 0)[0]


def energy(
    theta: Sequence[float],
    H: PauliSum,
    deflation: Sequence[Sequence[float]],
    config: EvolutionConfig,
    executor: Executor,
) -> float:
    """<ψ(θ)|H|ψ(θ)> + α Σ_k |<φ_k|ψ(θ)>|²."""
    value = executor.expectation(H, ansatz(theta))[0]
    for phi in deflation:
        value += config.penalty_alpha * overlap(theta, phi, executor)
    return value


def metric(theta: Sequence[float], executor: Executor) -> np.ndarray:
    """A_ij = -½ ∂²/∂x_i∂x_j |<ψ(θ)|ψ(x)>|² at x = θ."""
    theta = np.asarray(theta, dtype=np.float64)

    def p(x):
        return overlap(x, theta, executor)

    f0 = 1.0 if executor.exact else None
    return -0.5 * hessian(theta, p, f0=f0)


@dataclass(frozen=True)
class McLachlanSystem:
    A: np.ndarray
    C: np.ndarray
    theta_dot: np.ndarray
    epsilon: float
    used_pinv: bool = False

    @property
    def theta_dot_norm(self) -> float:
        return float(np.linalg.norm(self.theta_dot))

    @property
    def condition(self) -> float:
        return float(np.linalg.cond(self.A + self.epsilon * np.eye(len(self.C))))


def solve(A: np.ndarray, C: np.ndarray, epsilon: float) -> McLachlanSystem:
    """(A + εI) θ̇ = C by Cholesky, falling back to a pseudo-inverse."""
    A_t = torch.as_tensor(A, dtype=torch.float64)
    A_t = 0.5 * (A_t + A_t.T) + epsilon * torch.eye(len(C), dtype=torch.float64)
    C_t = torch.as_tensor(C, dtype=torch.float64)
    used_pinv = False
    # A is a Gram matrix, so we can use cholesky:
    L, info = torch.linalg.cholesky_ex(A_t)
    if info.item() == 0:
        x = torch.cholesky_solve(C_t.unsqueeze(-1), L).squeeze(-1)
    else:
        logging.warning("McLachlan matrix is not positive definite, using the pseudo-inverse")
        used_pinv = True
        try:
            x = torch.linalg.pinv(A_t, rtol=PINV_RTOL, hermitian=True) @ C_t
        except RuntimeError as e:
            raise SolverBreakdown(A, C, str(e))
    if not torch.isfinite(x).all():
        raise SolverBreakdown(A, C, "solution is not finite")
    return McLachlanSystem(
        A=np.asarray(A, dtype=np.float64),
        C=np.asarray(C, dtype=np.float64),
        theta_dot=x.numpy(),
        epsilon=epsilon,
        used_pinv=used_pinv,
    )


def step(
    theta: Sequence[float],
    H: PauliSum,
    deflation: Sequence[Sequence[float]],
    config: EvolutionConfig,
    executor: Executor,
) -> Tuple[np.ndarray, McLachlanSystem]:
    """One Euler step θ' = θ + dτ θ̇ with (A + εI) θ̇ = -∇E."""
    theta = np.asarray(theta, dtype=np.float64)

    def cost(x):
        return energy(x, H, deflation, config, executor)

    C = -gradient(theta, cost, circuit=ansatz())
    A = metric(theta, executor)
    system = solve(A, C, config.regularization(executor.exact))
    return theta + config.dtau * system.theta_dot, system
