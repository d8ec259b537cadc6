"""Published matrices at omega = 1.2 fm⁻¹ with the default parameters."""

import torch

from ._matrix import HamiltonianMatrix
from ._params import get_channel

LITERAL_OMEGA: float = 1.2

_HAMILTONIANS = {
    "1S0": [
        [0.9431, -0.8733, -0.7690, -0.5601],
        [-0.8733, 3.3652, -0.5646, -0.8648],
        [-0.7690, -0.5646, 5.4382, -0.1566],
        [-0.5601, -0.8648, -0.1566, 7.3451],
    ],
    "3S1": [
        [1.0946, -0.7114, -0.6111, -0.4112],
        [-0.7114, 3.5406, -0.3910, -0.6989],
        [-0.6111, -0.3910, 5.6122, -0.0119],
        [-0.4112, -0.6989, -0.0119, 7.5104],
    ],
    # (3, 3) repeats the 3S1 entry; the grid quadrature gives about 8.716
    "1P1": [
        [2.8561, -0.2395, -0.3827, -0.2282],
        [-0.2395, 4.919, -0.0373, -0.5097],
        [-0.3827, -0.0373, 6.8114, 0.4058],
        [-0.2282, -0.5097, 0.4058, 7.5104],
    ],
}

# printed as 3.33652; read as 3.3652 it reproduces the published levels 1, 2 and 4
_1S0_PRINTED_11 = 3.33652

# published lowest eigenvalues of the matrices above, fm⁻¹ (rounded)
PUBLISHED_EIGENVALUES = {
    "1S0": (0.395, 3.506, 5.664, 7.546),
    "3S1": (0.753, 3.634, 5.723, 7.648),
    "1P1": (2.783, 4.875, 6.765, 8.767),
}

# rows: P wave, columns: S wave
_E1_CORRECTED = [
    [0.57751, -0.4715, 0.0, 0.0],
    [0.0, 0.7455, -0.6668, 0.0],
    [0.0, 0.0, 0.8821, -0.8167],
    [0.0, 0.0, 0.0, 1.0002],
]

# as printed; (2,2) and (2,3) contradict the closed forms and the Pauli coefficients
_E1_PRINTED = [
    [0.57751, -0.4715, 0.0, 0.0],
    [0.0, 0.7455, -0.6668, 0.0],
    [0.0, 0.0, 5.4382, -0.9166],
    [0.0, 0.0, 0.0, 1.0002],
]


def literal_hamiltonian(channel, verbatim: bool = False) -> HamiltonianMatrix:
    """Published Hamiltonian of ``channel``; ``verbatim`` keeps the misprinted 1S0 (1, 1) entry."""
    channel = get_channel(channel)
    entries = torch.tensor(_HAMILTONIANS[channel.label], dtype=torch.float64)
    if verbatim and channel.label == "1S0":
        entries[1, 1] = _1S0_PRINTED_11
    return HamiltonianMatrix(
        entries=entries,
        units="fm^-1",
        source="literal",
        channel=channel.label,
    )


def literal_e1(verbatim: bool = False) -> HamiltonianMatrix:
    return HamiltonianMatrix(
        entries=torch.tensor(
            _E1_PRINTED if verbatim else _E1_CORRECTED, dtype=torch.float64
        ),
        units="fm",
        source="literal",
        channel="E1",
    )
