import logging
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence, Tuple

from tqdm.auto import tqdm

from qvqite.utils import parallel_map

from ._basis import ho_matrix
from ._linalg import diagonalize
from ._numerov import RadialGrid, solve_radial
from ._params import BasisSpec, ModelParams, get_channel


def mass_from_energy(E: float, params: ModelParams = ModelParams()) -> float:
    """Meson mass in MeV from a binding energy in fm⁻¹."""
    return 1000.0 * (E * params.hbar_c + 2.0 * params.m_c)


@dataclass(frozen=True)
class SweepRow:
    omega: float
    eigenvalues: Tuple[float, ...]
    exact: Tuple[float, ...] = ()


def _sweep_point(omega: float, channel: str, params: ModelParams, n_states: int):
    spec = BasisSpec.for_channel(channel, omega, params, n_states=n_states)
    H = ho_matrix(channel, spec, params)
    return tuple(diagonalize(H).eigenvalues.tolist())


def sweep_omega(
    channel,
    omegas: Sequence[float],
    params: ModelParams = ModelParams(),
    n_states: int = 4,
    with_exact: bool = False,
    grid: RadialGrid = RadialGrid(),
    jobs: int = 1,
    progress: Optional[bool] = None,
) -> List[SweepRow]:
    """Truncated-basis eigenvalues for each oscillator parameter.

    With ``with_exact`` every row also carries the lowest ``n_states``
    radial-equation energies, which do not depend on omega.
    """
    channel = get_channel(channel)
    omegas = [float(w) for w in omegas]
    if any(w <= 0 for w in omegas):
        raise ValueError(f"All omegas must be positive, got {omegas}")

    fn = partial(_sweep_point, channel=channel.label, params=params, n_states=n_states)
    if jobs != 1:
        spectra = parallel_map(fn, omegas, jobs=jobs)
    else:
        spectra = [
            fn(w)
            for w in tqdm(
                omegas,
                desc=f"omega sweep {channel.label}",
                disable=True if progress is False else None,
            )
        ]

    exact: Tuple[float, ...] = ()
    if with_exact:
        exact = tuple(
            s.E for s in solve_radial(channel, params, n_levels=n_states, grid=grid)
        )
        for w, lam in zip(omegas, spectra):
            if any(lk < ek - 1e-6 for lk, ek in zip(lam, exact)):
                logging.warning(
                    f"omega={w}: truncated eigenvalues {lam} fall below exact {exact}"
                )
    return [SweepRow(omega=w, eigenvalues=lam, exact=exact) for w, lam in zip(omegas, spectra)]
