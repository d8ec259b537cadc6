"""Bound states of the radial equation by Numerov shooting.

    -u''/(2μ) + [V(r) + l(l+1)/(2μr²)] u = E u,   u(0) = 0

Each level is bracketed by bisection on the node count of the outward
solution and then refined with a secant iteration on the mismatch of
logarithmic derivatives at the outer classical turning point.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import newton

from qvqite.utils import BracketError, NormalizationError

from ._params import ModelParams, get_channel, Channel
from ._potential import potential_function

_RESCALE = 1e100


@dataclass(frozen=True)
class RadialGrid:
    h: float = 0.001
    r_max: float = 15.0

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"grid step must be positive, got {self.h}")
        if not self.r_max > 5.0:
            raise ValueError(f"r_max must exceed 5 fm, got {self.r_max}")

    @property
    def n_points(self) -> int:
        return int(round(self.r_max / self.h)) + 1

    def points(self) -> np.ndarray:
        return np.arange(self.n_points) * self.h


@dataclass(frozen=True)
class RadialSolution:
    grid: np.ndarray
    u: np.ndarray
    E: float
    node_count: int
    channel: str
    level: int = 1


class _Shooter:
    """Numerov integrator for one channel on one grid."""

    def __init__(
        self,
        l: int,  # noqa: E741
        mu: float,
        v: Callable[[float], float],
        grid: RadialGrid,
        frobenius_slope: float,
    ):
        self.l = l
        self.mu = mu
        self.h = grid.h
        self.r = grid.points()
        r = self.r[1:]
        v_eff = np.array([v(x) for x in r]) + l * (l + 1) / (2.0 * mu * r * r)
        # index 0 is never used by the recursion
        self.v_eff = np.concatenate([[np.inf], v_eff])
        self.slope = frobenius_slope

    def _f(self, E: float) -> np.ndarray:
        g = 2.0 * self.mu * (E - self.v_eff)
        return 1.0 + (self.h * self.h / 12.0) * g

    def turning_point(self, E: float) -> int:
        allowed = np.nonzero(self.v_eff[1:] < E)[0]
        n = len(self.r)
        if len(allowed) == 0:
            return n // 2
        return int(min(max(allowed[-1] + 1, 10), n - 10))

    def outward(self, E: float, stop: Optional[int] = None, store: bool = True):
        """Integrate from the origin; returns (values or None, node count)."""
        f = self._f(E).tolist()
        n = len(f) if stop is None else stop + 1
        h = self.h
        l = self.l  # noqa: E741
        u_prev, u_cur = 0.0, h ** (l + 1) * (1.0 + self.slope * h)
        r2 = 2 * h
        u_next = r2 ** (l + 1) * (1.0 + self.slope * r2)
        values = [u_prev, u_cur, u_next] if store else None
        nodes = 0
        u_prev, u_cur = u_cur, u_next
        for i in range(3, n):
            u_next = ((12.0 - 10.0 * f[i - 1]) * u_cur - f[i - 2] * u_prev) / f[i]
            if u_next * u_cur < 0.0:
                nodes += 1
            u_prev, u_cur = u_cur, u_next
            if store:
                values.append(u_next)
            elif abs(u_cur) > _RESCALE:
                u_prev /= _RESCALE
                u_cur /= _RESCALE
        if store:
            return np.array(values[:n]), nodes
        return None, nodes

    def inward(self, E: float, stop: int) -> np.ndarray:
        """Integrate from r_max down to index ``stop`` starting from a vanishing tail."""
        f = self._f(E).tolist()
        n = len(f)
        u = [0.0] * n
        u[n - 1] = 0.0
        u[n - 2] = 1e-30
        for i in range(n - 3, stop - 1, -1):
            u[i] = ((12.0 - 10.0 * f[i + 1]) * u[i + 1] - f[i + 2] * u[i + 2]) / f[i]
            if abs(u[i]) > _RESCALE:
                scale = 1.0 / _RESCALE
                for k in range(i, n):
                    u[k] *= scale
        return np.array(u)

    def mismatch(self, E: float, m: int) -> float:
        out, _ = self.outward(E, stop=m + 1)
        inn = self.inward(E, stop=m - 1)
        ld_out = (out[m + 1] - out[m - 1]) / (2.0 * self.h * out[m])
        ld_in = (inn[m + 1] - inn[m - 1]) / (2.0 * self.h * inn[m])
        return ld_out - ld_in

    def nodes(self, E: float) -> int:
        return self.outward(E, store=False)[1]


def _bisect_level(
    shooter: _Shooter, level: int, bracket: Tuple[float, float], tol: float
) -> Tuple[float, float]:
    lo, hi = bracket
    if shooter.nodes(lo) > level - 1:
        raise BracketError(level, f"lower bracket {lo} already has too many nodes")
    if shooter.nodes(hi) < level:
        raise BracketError(level, f"upper bracket {hi} has too few nodes")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if shooter.nodes(mid) >= level:
            hi = mid
        else:
            lo = mid
    return lo, hi


def solve_radial(
    channel,
    params: ModelParams,
    n_levels: int = 4,
    grid: RadialGrid = RadialGrid(),
    bracket: Tuple[float, float] = (-5.0, 15.0),
    potential: Optional[Callable[[float], float]] = None,
) -> List[RadialSolution]:
    """Lowest ``n_levels`` bound states of the radial equation, energies in fm⁻¹.

    ``potential`` replaces the quark-model V(r) (a scalar function of r in fm);
    the Frobenius start then assumes no Coulomb singularity.
    """
    channel: Channel = get_channel(channel)
    if n_levels < 1:
        raise ValueError(f"n_levels must be at least 1, got {n_levels}")
    l = channel.l  # noqa: E741
    if potential is None:
        v = potential_function(params, channel)
        slope = -params.mu * params.a_coul / (l + 1)
    else:
        v = potential
        slope = 0.0
    shooter = _Shooter(l, params.mu, v, grid, slope)

    solutions = []
    for level in range(1, n_levels + 1):
        lo, hi = _bisect_level(shooter, level, bracket, tol=1e-6)
        E = 0.5 * (lo + hi)
        m = shooter.turning_point(E)
        try:
            E_sec = newton(
                lambda e: shooter.mismatch(e, m), x0=lo, x1=hi, tol=1e-12, maxiter=50
            )
            if lo - 1e-6 <= E_sec <= hi + 1e-6:
                E = float(E_sec)
            else:
                logging.debug(
                    f"solve_radial {channel.label} level {level}: secant left the bracket, keeping bisection"
                )
        except (RuntimeError, ZeroDivisionError, FloatingPointError):
            logging.debug(
                f"solve_radial {channel.label} level {level}: secant failed, keeping bisection"
            )
        solutions.append(_assemble(shooter, E, m, level, channel.label))
    return solutions


def _assemble(shooter: _Shooter, E: float, m: int, level: int, label: str) -> RadialSolution:
    out, _ = shooter.outward(E, stop=m)
    inn = shooter.inward(E, stop=m)
    if out[m] == 0.0 or inn[m] == 0.0:
        raise NormalizationError(level, "solution vanishes at the matching point")
    u = np.concatenate([out[: m + 1], inn[m + 1 :] * (out[m] / inn[m])])
    norm2 = trapezoid(u * u, shooter.r)
    if not (np.isfinite(norm2) and norm2 > 0):
        raise NormalizationError(level, f"norm² = {norm2}")
    u = u / math.sqrt(norm2)
    # positive at small r
    first = np.argmax(np.abs(u) > 1e-8 * np.abs(u).max())
    if u[first] < 0:
        u = -u
    significant = np.abs(u) > 1e-10 * np.abs(u).max()
    s = np.sign(u[significant])
    nodes = int(np.count_nonzero(s[1:] != s[:-1]))
    if nodes != level - 1:
        raise BracketError(level, f"converged solution has {nodes} nodes")
    return RadialSolution(
        grid=shooter.r.copy(), u=u, E=float(E), node_count=nodes, channel=label, level=level
    )


def grid_overlap(u_f: RadialSolution, u_i: RadialSolution, weight: str = "1") -> float:
    """Trapezoidal ∫ u_f w u_i dr with w = 1 or w = r."""
    if u_f.grid.shape != u_i.grid.shape or not np.array_equal(u_f.grid, u_i.grid):
        raise ValueError("grid_overlap needs both solutions on the same grid")
    if weight in ("1", 1):
        w = 1.0
    elif weight == "r":
        w = u_f.grid
    else:
        raise ValueError(f"weight must be '1' or 'r', got {weight!r}")
    return float(trapezoid(u_f.u * w * u_i.u, u_f.grid))
