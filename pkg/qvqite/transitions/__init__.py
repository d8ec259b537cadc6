from ._spec import (
    KINDS,
    StateRef,
    TransitionSpec,
    AmplitudeResult,
    M1_TRANSITIONS,
    E1_TRANSITIONS,
)
from ._thetas import EIGVEC, ThetaSource, eigvec_thetas, load_thetas, spectrum_filename
from ._amplitudes import (
    METHODS,
    swap_test_circuit,
    hadamard_test_circuit,
    m1_direct,
    m1_swap,
    hadamard_term,
    e1_amplitude,
    GridSolutions,
    grid_amplitude,
    amplitude,
    check_method,
    evaluate_transitions,
)
from ._folding import ZNE_METHODS, FoldedEvaluator, folded_outcomes, make_evaluator

__all__ = [
    KINDS,
    StateRef,
    TransitionSpec,
    AmplitudeResult,
    M1_TRANSITIONS,
    E1_TRANSITIONS,
    EIGVEC,
    ThetaSource,
    eigvec_thetas,
    load_thetas,
    spectrum_filename,
    METHODS,
    swap_test_circuit,
    hadamard_test_circuit,
    m1_direct,
    m1_swap,
    hadamard_term,
    e1_amplitude,
    GridSolutions,
    grid_amplitude,
    amplitude,
    check_method,
    evaluate_transitions,
    ZNE_METHODS,
    FoldedEvaluator,
    folded_outcomes,
    make_evaluator,
]
