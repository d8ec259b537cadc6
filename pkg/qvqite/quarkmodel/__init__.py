from ._params import HBAR_C, ModelParams, Channel, CHANNELS, get_channel, BasisSpec
from ._potential import potential, central_potential, spin_potential
from ._matrix import HamiltonianMatrix
from ._basis import ho_matrix, e1_matrix, e1_closed_form, ho_radial, basis_functions
from ._literal import LITERAL_OMEGA, PUBLISHED_EIGENVALUES, literal_hamiltonian, literal_e1
from ._numerov import RadialGrid, RadialSolution, solve_radial, grid_overlap
from ._linalg import SpectrumResult, diagonalize
from ._spectra import SweepRow, mass_from_energy, sweep_omega

__all__ = [
    HBAR_C,
    ModelParams,
    Channel,
    CHANNELS,
    get_channel,
    BasisSpec,
    potential,
    central_potential,
    spin_potential,
    HamiltonianMatrix,
    ho_matrix,
    e1_matrix,
    e1_closed_form,
    ho_radial,
    basis_functions,
    LITERAL_OMEGA,
    PUBLISHED_EIGENVALUES,
    literal_hamiltonian,
    literal_e1,
    RadialGrid,
    RadialSolution,
    solve_radial,
    grid_overlap,
    SpectrumResult,
    diagonalize,
    SweepRow,
    mass_from_energy,
    sweep_omega,
]
