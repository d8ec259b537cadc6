"""Zero-noise extrapolation by global unitary folding."""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm.auto import tqdm

from qvqite.sim import Circuit, NoiseModel
from qvqite.utils import parallel_map

DEFAULT_SCALES: Tuple[int, ...] = (1, 3, 5, 7)
DEFAULT_ORDERS: Tuple[int, ...] = (1, 2)


def fold(circuit: Circuit, scale: int) -> Circuit:
    """U (U† U)^k with k = (scale - 1) / 2."""
    if int(scale) != scale or scale < 1 or scale % 2 == 0:
        raise ValueError(f"Folding scale must be an odd integer >= 1, got {scale}")
    k = (int(scale) - 1) // 2
    U_dag = circuit.inverse()
    folded = circuit
    for _ in range(k):
        folded = folded + U_dag + circuit
    return folded


@dataclass(frozen=True)
class FoldingPlan:
    scales: Tuple[int, ...] = DEFAULT_SCALES
    orders: Tuple[int, ...] = DEFAULT_ORDERS
    trials: int = 1
    bootstrap: int = 200
    physical_range: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        scales = tuple(int(s) for s in self.scales)
        if len(scales) == 0 or scales[0] != 1:
            raise ValueError(f"Scales must start at 1, got {scales}")
        if any(s % 2 == 0 for s in scales) or list(scales) != sorted(set(scales)):
            raise ValueError(f"Scales must be odd and strictly ascending, got {scales}")
        orders = tuple(int(o) for o in self.orders)
        if any(o < 1 for o in orders):
            raise ValueError(f"Fit orders must be positive, got {orders}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.bootstrap < 50:
            raise ValueError(f"At least 50 bootstrap resamples are needed, got {self.bootstrap}")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "orders", orders)


@dataclass(frozen=True)
class ZneFit:
    order: int
    value: float
    bootstrap_std: float
    physical: bool
    coefficients: Tuple[float, ...] = ()


@dataclass
class ZneResult:
    scales: Tuple[int, ...]
    means: List[float]
    stderrs: List[float]
    fits: List[ZneFit] = field(default_factory=list)

    def fit(self, order: int) -> ZneFit:
        for f in self.fits:
            if f.order == order:
                return f
        raise KeyError(f"No fit of order {order}")

    @property
    def reported(self) -> List[ZneFit]:
        """Fits inside the physical range."""
        return [f for f in self.fits if f.physical]


def extrapolate(scales: Sequence[float], values: Sequence[float], order: int) -> Tuple[float, np.ndarray]:
    """Least-squares polynomial in the scale, evaluated at scale 0."""
    scales = np.asarray(scales, dtype=np.float64)
    if len(np.unique(scales)) < order + 1:
        raise ValueError(
            f"An order-{order} fit needs {order + 1} distinct scales, got {len(np.unique(scales))}"
        )
    coeffs = np.polyfit(scales, np.asarray(values, dtype=np.float64), order)
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("Extrapolation fit is singular")
    return float(coeffs[-1]), coeffs


def bootstrap_std(
    samples: Sequence[np.ndarray],
    refit: Callable[[List[float]], float],
    B: int,
    rng: np.random.Generator,
) -> float:
    """Standard deviation of ``refit`` over B resamplings, each scale's samples
    drawn with replacement independently."""
    if B < 50:
        raise ValueError(f"At least 50 bootstrap resamples are needed, got {B}")
    samples = [np.asarray(s, dtype=np.float64) for s in samples]
    estimates = np.empty(B)
    for b in range(B):
        means = [s[rng.integers(0, len(s), size=len(s))].mean() for s in samples]
        estimates[b] = refit(means)
    return float(estimates.std(ddof=1))


def linear_intercept_se(scales: Sequence[float], sigma: float, n: int) -> float:
    """Analytic standard error of an unweighted straight-line intercept when
    every scale mean has per-shot spread ``sigma`` over ``n`` shots."""
    x = np.asarray(scales, dtype=np.float64)
    sxx = ((x - x.mean()) ** 2).sum()
    return float(sigma / math.sqrt(n) * math.sqrt(1.0 / len(x) + x.mean() ** 2 / sxx))


def _evaluate_trial(evaluate, noise: Optional[NoiseModel], job: Tuple[int, int]) -> np.ndarray:
    scale, trial = job
    return np.asarray(evaluate(scale, trial, noise), dtype=np.float64)


def zne(
    evaluate: Callable[[int, int, Optional[NoiseModel]], np.ndarray],
    plan: FoldingPlan,
    noise: Optional[NoiseModel],
    rng: np.random.Generator,
    progress: Optional[bool] = None,
    jobs: int = 1,
) -> ZneResult:
    """Fold, evaluate and extrapolate an observable to zero noise.

    ``evaluate(scale, trial, noise)`` returns the per-shot outcomes of one
    trial at one scale; their mean is the observable. With ``jobs != 1`` the
    (scale, trial) evaluations run in a process pool, so ``evaluate`` must be
    picklable.
    """
    work = [(scale, t) for scale in plan.scales for t in range(plan.trials)]
    fn = partial(_evaluate_trial, evaluate, noise)
    if jobs != 1:
        outcomes = parallel_map(fn, work, jobs=jobs)
    else:
        outcomes = [fn(w) for w in tqdm(work, desc="zne", disable=True if progress is False else None)]

    per_scale: List[np.ndarray] = []
    means, stderrs = [], []
    for i, scale in enumerate(plan.scales):
        trial_outcomes = outcomes[i * plan.trials : (i + 1) * plan.trials]
        trial_means = np.array([o.mean() for o in trial_outcomes])
        pooled = np.concatenate(trial_outcomes)
        per_scale.append(pooled)
        means.append(float(trial_means.mean()))
        if plan.trials > 1:
            stderrs.append(float(trial_means.std(ddof=1) / math.sqrt(plan.trials)))
        else:
            stderrs.append(float(pooled.std(ddof=1) / math.sqrt(len(pooled))))
        logging.debug(f"zne scale {scale}: {means[-1]:.6g} +- {stderrs[-1]:.2g}")

    result = ZneResult(scales=plan.scales, means=means, stderrs=stderrs)
    lo, hi = plan.physical_range
    for order in plan.orders:
        value, coeffs = extrapolate(plan.scales, means, order)
        std = bootstrap_std(
            per_scale,
            lambda m, order=order: extrapolate(plan.scales, m, order)[0],
            plan.bootstrap,
            rng,
        )
        physical = lo <= value <= hi
        if not physical:
            logging.warning(
                f"Order-{order} extrapolation {value:.4g} is outside [{lo}, {hi}]"
            )
        result.fits.append(
            ZneFit(
                order=order,
                value=value,
                bootstrap_std=std,
                physical=physical,
                coefficients=tuple(float(c) for c in coeffs),
            )
        )
    return result
