from ._pauli import (
    PAULI_LABELS,
    PauliString,
    PauliSum,
    all_strings,
    decompose,
    reconstruct,
    expval_exact,
    matrix_element,
    format_table,
)

__all__ = [
    PAULI_LABELS,
    PauliString,
    PauliSum,
    all_strings,
    decompose,
    reconstruct,
    expval_exact,
    matrix_element,
    format_table,
]
