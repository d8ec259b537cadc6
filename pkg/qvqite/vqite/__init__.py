from ._config import EvolutionConfig, EPSILON_EXACT, EPSILON_SAMPLED
from ._derivatives import gradient, hessian
from ._mclachlan import (
    McLachlanSystem,
    energy,
    metric,
    overlap,
    solve,
    step,
    gershgorin_range,
    check_penalty,
)
from ._evolve import (
    StepRecord,
    EvolutionTrace,
    ConvergenceMonitor,
    Level,
    evolve,
    spectrum,
    spectrum_trials,
    pairwise_overlaps,
)

__all__ = [
    EvolutionConfig,
    EPSILON_EXACT,
    EPSILON_SAMPLED,
    gradient,
    hessian,
    McLachlanSystem,
    energy,
    metric,
    overlap,
    solve,
    step,
    gershgorin_range,
    check_penalty,
    StepRecord,
    EvolutionTrace,
    ConvergenceMonitor,
    Level,
    evolve,
    spectrum,
    spectrum_trials,
    pairwise_overlaps,
]
