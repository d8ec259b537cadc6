import math

import numpy as np

from ._params import ModelParams, get_channel


def central_potential(r, params: ModelParams):
    """Coulomb plus linear confinement, fm⁻¹."""
    return -params.a_coul / r + params.b_conf_fm * r


def spin_potential(r, params: ModelParams):
    """Gaussian-smeared contact term without the spin factor, fm⁻¹."""
    return params.spin_strength * np.exp(-((params.sigma_fm * r) ** 2))


def potential(r, params: ModelParams, channel):
    """V(r) = -a/r + b r + V_s(r) S_c·S_c̄ in fm⁻¹ for r in fm.

    Accepts scalars or arrays; all r must be positive.
    """
    channel = get_channel(channel)
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(~(r_arr > 0)):
        raise ValueError("potential is only defined for r > 0")
    v = central_potential(r_arr, params) + channel.spin_factor * spin_potential(
        r_arr, params
    )
    if np.ndim(r) == 0:
        return float(v)
    return v


def potential_function(params: ModelParams, channel):
    """Scalar fast path of :func:`potential` for quadrature and shooting loops."""
    channel = get_channel(channel)
    a = params.a_coul
    b = params.b_conf_fm
    c = channel.spin_factor * params.spin_strength
    s2 = params.sigma_fm**2
    exp = math.exp

    def v(r: float) -> float:
        return -a / r + b * r + c * exp(-s2 * r * r)

    return v
