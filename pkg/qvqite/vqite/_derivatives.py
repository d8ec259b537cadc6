"""Parameter-shift derivatives of circuit functions.

Valid for functions in which every parameter enters through a single
rotation exp(-i θ G) with G having eigenvalues ±1/2, so that the function is
a + b cos θ + c sin θ in each parameter separately.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np

SHIFT: float = math.pi / 2


def gradient(
    theta: Sequence[float],
    f: Callable[[np.ndarray], float],
    circuit=None,
) -> np.ndarray:
    """∂f/∂θ_i = [f(θ + π/2 e_i) - f(θ - π/2 e_i)] / 2.

    If ``circuit`` (with parameter slots) is given it is checked to admit the
    two-term rule first.
    """
    if circuit is not None:
        circuit.check_shift_rule()
    theta = np.asarray(theta, dtype=np.float64)
    grad = np.zeros_like(theta)
    for i in range(len(theta)):
        e = np.zeros_like(theta)
        e[i] = SHIFT
        grad[i] = 0.5 * (f(theta + e) - f(theta - e))
    return grad


def hessian(
    theta: Sequence[float],
    f: Callable[[np.ndarray], float],
    f0: Optional[float] = None,
) -> np.ndarray:
    """Second derivatives by shifts: ±π along the diagonal, four-point ±π/2
    stencil off the diagonal."""
    theta = np.asarray(theta, dtype=np.float64)
    p = len(theta)
    if f0 is None:
        f0 = f(theta)
    Hm = np.zeros((p, p))
    unit = np.eye(p)
    for i in range(p):
        Hm[i, i] = 0.25 * (f(theta + math.pi * unit[i]) - 2.0 * f0 + f(theta - math.pi * unit[i]))
        for j in range(i + 1, p):
            si, sj = SHIFT * unit[i], SHIFT * unit[j]
            value = 0.25 * (
                f(theta + si + sj)
                - f(theta + si - sj)
                - f(theta - si + sj)
                + f(theta - si - sj)
            )
            Hm[i, j] = value
            Hm[j, i] = value
    return Hm
