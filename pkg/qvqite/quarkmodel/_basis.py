"""Matrices in the truncated three-dimensional oscillator basis.

The reduced radial functions are

    u_{n,l}(r) = N r^{l+1} exp(-ν r²/2) L_n^{l+1/2}(ν r²),   n = 0, 1, ...

with N² = 2 ν^{l+3/2} n! / Γ(n + l + 3/2), positive at small r.
"""

import logging
import math
import warnings
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import torch
from scipy.integrate import quad, IntegrationWarning
from scipy.special import eval_genlaguerre, gammaln

from qvqite.utils import QuadratureError

from ._matrix import HamiltonianMatrix
from ._params import BasisSpec, ModelParams, get_channel
from ._potential import potential_function

R_MAX: float = 20.0
EPSABS: float = 1e-9
_BREAKPOINTS: Tuple[float, ...] = (0.25, 0.5, 1.0, 2.0, 4.0)


def ho_radial(n: int, l: int, nu: float, r):  # noqa: E741
    """Orthonormal oscillator radial function u_{n,l}(r), vectorized over r."""
    log_norm = 0.5 * (
        math.log(2.0) + (l + 1.5) * math.log(nu) + gammaln(n + 1) - gammaln(n + l + 1.5)
    )
    r = np.asarray(r, dtype=np.float64)
    x = nu * r * r
    return (
        math.exp(log_norm)
        * r ** (l + 1)
        * np.exp(-0.5 * x)
        * eval_genlaguerre(n, l + 0.5, x)
    )


def _radial_scalar(n: int, l: int, nu: float) -> Callable[[float], float]:  # noqa: E741
    norm = math.exp(
        0.5
        * (
            math.log(2.0)
            + (l + 1.5) * math.log(nu)
            + gammaln(n + 1)
            - gammaln(n + l + 1.5)
        )
    )
    alpha = l + 0.5

    def u(r: float) -> float:
        x = nu * r * r
        return norm * r ** (l + 1) * math.exp(-0.5 * x) * eval_genlaguerre(n, alpha, x)

    return u


def _integrate(
    integrand: Callable[[float], float],
    r_max: float,
    epsabs: float,
) -> Tuple[float, float, Optional[str]]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, err = quad(
            integrand,
            0.0,
            r_max,
            epsabs=epsabs,
            epsrel=0.0,
            limit=200,
            points=[p for p in _BREAKPOINTS if p < r_max],
        )
    problems = [str(w.message) for w in caught if issubclass(w.category, IntegrationWarning)]
    return value, err, (problems[0] if len(problems) > 0 else None)


def _check_quadrature(failures: List[Tuple[float, Tuple[int, int], str]]):
    if len(failures) > 0:
        err, entry, message = max(failures, key=lambda f: f[0])
        raise QuadratureError(entry, err, f"({len(failures)} entries failed; {message})")


def ho_matrix(
    channel,
    spec: BasisSpec,
    params: ModelParams,
    r_max: float = R_MAX,
    epsabs: float = EPSABS,
) -> HamiltonianMatrix:
    """Quark-model Hamiltonian H_HO + V(r) - ½μω²r² in the oscillator basis.

    Each unordered pair of basis functions is integrated once, so the result is
    exactly symmetric.
    """
    channel = get_channel(channel)
    if spec.l != channel.l:
        raise ValueError(
            f"BasisSpec has l={spec.l} but channel {channel.label} has l={channel.l}"
        )
    nu = spec.nu
    half_k = 0.5 * spec.mu * spec.omega**2
    v = potential_function(params, channel)
    funcs = [_radial_scalar(n, spec.l, nu) for n in range(spec.n_states)]

    dim = spec.n_states
    H = np.zeros((dim, dim))
    failures = []
    worst = 0.0
    for i in range(dim):
        for j in range(i, dim):
            fi, fj = funcs[i], funcs[j]

            def integrand(r, fi=fi, fj=fj):
                if r <= 0.0:
                    return 0.0
                return (v(r) - half_k * r * r) * fi(r) * fj(r)

            value, err, problem = _integrate(integrand, r_max, epsabs)
            if problem is not None:
                failures.append((err, (i, j), problem))
            worst = max(worst, err)
            H[i, j] = value
            H[j, i] = value
        H[i, i] += spec.ho_energy(i + 1)
    _check_quadrature(failures)
    logging.debug(
        f"ho_matrix {channel.label} omega={spec.omega}: worst quadrature error {worst:.2e}"
    )

    return HamiltonianMatrix(
        entries=torch.as_tensor(H), units="fm^-1", source="computed", channel=channel.label
    )


def e1_matrix(
    spec_S: BasisSpec,
    spec_P: BasisSpec,
    r_max: float = R_MAX,
    epsabs: float = EPSABS,
) -> HamiltonianMatrix:
    """Matrix of r between P-wave (rows) and S-wave (columns) basis functions, fm.

    Entry (n, n') = <u_{n,1}| r |u_{n',0}>; nonzero only for n' = n and n' = n + 1.
    """
    if spec_S.l != 0 or spec_P.l != 1:
        raise ValueError("e1_matrix needs an l=0 and an l=1 basis")
    if (
        spec_S.omega != spec_P.omega
        or spec_S.n_states != spec_P.n_states
        or spec_S.mu != spec_P.mu
    ):
        raise ValueError("S and P bases must share omega, mu and n_states")
    nu = spec_S.nu
    dim = spec_S.n_states
    s_funcs = [_radial_scalar(n, 0, nu) for n in range(dim)]
    p_funcs = [_radial_scalar(n, 1, nu) for n in range(dim)]

    M = np.zeros((dim, dim))
    failures = []
    for n in range(dim):
        for m in range(dim):
            fp, fs = p_funcs[n], s_funcs[m]
            value, err, problem = _integrate(
                lambda r, fp=fp, fs=fs: fp(r) * r * fs(r), r_max, epsabs
            )
            if problem is not None:
                failures.append((err, (n, m), problem))
            M[n, m] = value
    _check_quadrature(failures)

    return HamiltonianMatrix(
        entries=torch.as_tensor(M), units="fm", source="computed", channel="E1"
    )


def e1_closed_form(spec: BasisSpec) -> np.ndarray:
    """Analytic counterpart of :func:`e1_matrix` (same orientation and phases)."""
    dim = spec.n_states
    M = np.zeros((dim, dim))
    for n in range(dim):
        M[n, n] = spec.b_len * math.sqrt(n + 1.5)
        if n + 1 < dim:
            M[n, n + 1] = -spec.b_len * math.sqrt(n + 1)
    return M


def basis_functions(spec: BasisSpec, r: Sequence[float]) -> np.ndarray:
    """Rows u_{n,l}(r) for n = 0..n_states-1 on the given grid."""
    return np.stack([ho_radial(n, spec.l, spec.nu, r) for n in range(spec.n_states)])
