from ._gates import Param, Gate, RY, RX, H, X, CNOT, CSWAP, pauli_gate
from ._circuit import (
    Circuit,
    N_ANSATZ_PARAMS,
    ansatz,
    overlap_circuit,
    ansatz_amplitudes,
    theta_from_amplitudes,
)
from ._state import StateVector, run
from ._noise import (
    NoiseModel,
    PRESETS,
    noise_from_spec,
    apply_depolarizing,
    draw_fault_codes,
    insert_faults,
)
from ._sampling import (
    Counts,
    measure_counts,
    sample_counts,
    expval_sampled,
    basis_rotation,
    parity_signs,
    parity_expectation,
)
from ._executor import RunConfig, Executor, trial_summary

__all__ = [
    Param,
    Gate,
    RY,
    RX,
    H,
    X,
    CNOT,
    CSWAP,
    pauli_gate,
    Circuit,
    N_ANSATZ_PARAMS,
    ansatz,
    overlap_circuit,
    ansatz_amplitudes,
    theta_from_amplitudes,
    StateVector,
    run,
    NoiseModel,
    PRESETS,
    noise_from_spec,
    apply_depolarizing,
    draw_fault_codes,
    insert_faults,
    Counts,
    measure_counts,
    sample_counts,
    expval_sampled,
    basis_rotation,
    parity_signs,
    parity_expectation,
    RunConfig,
    Executor,
    trial_summary,
]
