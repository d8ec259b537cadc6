"""Model parameters, channels and oscillator basis specifications.

Inputs are given in GeV (as quoted in the literature); everything downstream
works in fm units with hbar = c = 1, using ``hbar_c`` to convert.
"""

import math
from dataclasses import dataclass, replace
from typing import Dict

HBAR_C: float = 0.19732  # GeV fm


@dataclass(frozen=True)
class ModelParams:
    """Quark-model couplings.

    ``b_conf`` is in GeV², ``m_c`` and ``sigma`` in GeV; the ``*_fm`` properties
    are the same quantities in fm⁻² / fm⁻¹.
    """

    alpha_s: float = 0.5461
    b_conf: float = 0.1425
    m_c: float = 1.4794
    sigma: float = 1.0946
    hbar_c: float = HBAR_C

    def __post_init__(self):
        if self.m_c <= 0:
            raise ValueError(f"m_c must be positive, got {self.m_c}")
        if self.hbar_c <= 0:
            raise ValueError(f"hbar_c must be positive, got {self.hbar_c}")
        if self.sigma < 0 or self.b_conf < 0 or self.alpha_s < 0:
            raise ValueError("alpha_s, b_conf and sigma must be non-negative")

    @property
    def a_coul(self) -> float:
        return 4.0 * self.alpha_s / 3.0

    @property
    def b_conf_fm(self) -> float:
        return self.b_conf / self.hbar_c**2

    @property
    def m_c_fm(self) -> float:
        return self.m_c / self.hbar_c

    @property
    def sigma_fm(self) -> float:
        return self.sigma / self.hbar_c

    @property
    def mu(self) -> float:
        """Reduced mass in fm⁻¹."""
        return self.m_c_fm / 2.0

    @property
    def spin_strength(self) -> float:
        """Coefficient of S_c·S_c̄ exp(-σ²r²) in fm⁻¹."""
        return (
            32.0
            * math.pi
            * self.alpha_s
            / (9.0 * self.m_c_fm**2)
            * (self.sigma_fm / math.sqrt(math.pi)) ** 3
        )

    @classmethod
    def from_fm_units(
        cls,
        alpha_s: float,
        b_conf_fm: float,
        m_c_fm: float,
        sigma_fm: float,
        hbar_c: float = HBAR_C,
    ) -> "ModelParams":
        return cls(
            alpha_s=alpha_s,
            b_conf=b_conf_fm * hbar_c**2,
            m_c=m_c_fm * hbar_c,
            sigma=sigma_fm * hbar_c,
            hbar_c=hbar_c,
        )

    @classmethod
    def from_config(cls, config) -> "ModelParams":
        defaults = cls()
        return cls(
            **{
                k: float(config.get(k, getattr(defaults, k)))
                for k in ("alpha_s", "b_conf", "m_c", "sigma", "hbar_c")
            }
        )

    def with_changes(self, **kwargs) -> "ModelParams":
        return replace(self, **kwargs)

    def as_dict(self) -> dict:
        return dict(
            alpha_s=self.alpha_s,
            b_conf=self.b_conf,
            m_c=self.m_c,
            sigma=self.sigma,
            hbar_c=self.hbar_c,
        )


@dataclass(frozen=True)
class Channel:
    label: str
    l: int  # noqa: E741
    spin_factor: float

    @property
    def spin(self) -> int:
        return 0 if self.spin_factor < 0 else 1


CHANNELS: Dict[str, Channel] = {
    "1S0": Channel("1S0", 0, -0.75),
    "3S1": Channel("3S1", 0, 0.25),
    "1P1": Channel("1P1", 1, -0.75),
}


def get_channel(label) -> Channel:
    if isinstance(label, Channel):
        return label
    try:
        return CHANNELS[str(label)]
    except KeyError:
        raise ValueError(
            f"Unknown channel `{label}`; expected one of {list(CHANNELS.keys())}"
        )


@dataclass(frozen=True)
class BasisSpec:
    omega: float
    mu: float
    l: int = 0  # noqa: E741
    n_states: int = 4

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.n_states < 1:
            raise ValueError(f"n_states must be at least 1, got {self.n_states}")
        if self.l < 0:
            raise ValueError(f"l must be non-negative, got {self.l}")

    @classmethod
    def for_channel(
        cls, channel, omega: float, params: ModelParams, n_states: int = 4
    ) -> "BasisSpec":
        return cls(
            omega=omega, mu=params.mu, l=get_channel(channel).l, n_states=n_states
        )

    @property
    def nu(self) -> float:
        return self.mu * self.omega

    @property
    def b_len(self) -> float:
        """Oscillator length 1/√ν in fm."""
        return 1.0 / math.sqrt(self.nu)

    def ho_energy(self, n: int) -> float:
        """Oscillator eigenenergy of basis state n = 1..n_states."""
        return self.omega * (2 * n + self.l - 0.5)
