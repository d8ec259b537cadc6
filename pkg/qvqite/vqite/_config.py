from dataclasses import dataclass, replace
from typing import Optional, Tuple

EPSILON_EXACT: float = 1e-6
EPSILON_SAMPLED: float = 1e-3


@dataclass(frozen=True)
class EvolutionConfig:
    """Imaginary-time evolution settings.

    Args:
        dtau: imaginary-time step
        theta_init: starting angles
        max_steps: hard cap on the number of steps
        stop_tol: exact-mode stop when |E_k - E_{k-stop_window}| < stop_tol
        stop_window: lag of that comparison, also the averaging window of
            sampled-mode final energies
        penalty_alpha: deflation penalty strength, fm⁻¹
        epsilon: Tikhonov shift of A; ``None`` picks the mode default
    """

    dtau: float = 0.02
    theta_init: Tuple[float, ...] = (0.5, 0.5, 0.5)
    max_steps: int = 300
    stop_tol: float = 1e-4
    stop_window: int = 10
    penalty_alpha: float = 20.0
    epsilon: Optional[float] = None

    def __post_init__(self):
        if not self.dtau > 0:
            raise ValueError(f"dtau must be positive, got {self.dtau}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.stop_window < 1:
            raise ValueError(f"stop_window must be at least 1, got {self.stop_window}")
        if self.epsilon is not None and self.epsilon < 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.stop_tol <= 0:
            raise ValueError(f"stop_tol must be positive, got {self.stop_tol}")
        object.__setattr__(self, "theta_init", tuple(float(t) for t in self.theta_init))

    def regularization(self, exact: bool) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return EPSILON_EXACT if exact else EPSILON_SAMPLED

    def with_changes(self, **kwargs) -> "EvolutionConfig":
        return replace(self, **kwargs)

    @classmethod
    def from_config(cls, config) -> "EvolutionConfig":
        defaults = cls()
        theta_init = config.get("theta_init", defaults.theta_init)
        if isinstance(theta_init, (int, float)):
            theta_init = (float(theta_init),) * 3
        return cls(
            dtau=float(config.get("dtau", defaults.dtau)),
            theta_init=tuple(theta_init),
            max_steps=int(config.get("max_steps", defaults.max_steps)),
            stop_tol=float(config.get("stop_tol", defaults.stop_tol)),
            stop_window=int(config.get("stop_window", defaults.stop_window)),
            penalty_alpha=float(config.get("penalty_alpha", defaults.penalty_alpha)),
            epsilon=config.get("epsilon", None),
        )
