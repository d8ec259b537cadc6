from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from qvqite.pauliops import PauliSum, decompose
from qvqite.quarkmodel import get_channel, literal_e1
from qvqite.sim import N_ANSATZ_PARAMS
from qvqite.utils import format_float

KINDS = ("M1", "E1")


@dataclass(frozen=True)
class StateRef:
    """The ``index``-th (1-based) level of a channel and its circuit angles."""

    channel: str
    index: int
    theta: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "channel", get_channel(self.channel).label)
        if int(self.index) < 1:
            raise ValueError(f"State index must be at least 1, got {self.index}")
        object.__setattr__(self, "index", int(self.index))
        theta = tuple(float(t) for t in self.theta)
        if len(theta) not in (0, N_ANSATZ_PARAMS):
            raise ValueError(f"Expected {N_ANSATZ_PARAMS} angles, got {len(theta)}")
        object.__setattr__(self, "theta", theta)

    @property
    def name(self) -> str:
        return f"{self.index}_{self.channel}"

    @property
    def l(self) -> int:  # noqa: E743
        return get_channel(self.channel).l

    def as_dict(self) -> dict:
        return dict(channel=self.channel, index=self.index, theta=list(self.theta))

    @classmethod
    def parse(cls, text: str) -> "StateRef":
        """``"2_3S1"`` -> level 2 of the 3S1 channel."""
        try:
            index, channel = str(text).split("_", 1)
            return cls(channel, int(index))
        except ValueError:
            raise ValueError(f"Cannot parse state `{text}`; expected <index>_<channel>, e.g. 1_3S1")


@dataclass(frozen=True)
class TransitionSpec:
    """A radiative transition between two model states.

    M1 transitions connect the two S-wave channels and are the squared
    spatial overlap. E1 transitions connect 1P1 and 1S0 through the radial
    operator r, given as a :class:`PauliSum` in fm (the corrected E1 matrix
    when not set).
    """

    initial: StateRef
    final: StateRef
    kind: str = "M1"
    operator: Optional[PauliSum] = field(default=None, compare=False)
    theta_source: str = "eigvec"

    def __post_init__(self):
        kind = str(self.kind).upper()
        if kind not in KINDS:
            raise ValueError(f"Unknown transition kind `{self.kind}`; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        ls = (self.initial.l, self.final.l)
        if kind == "M1":
            if ls != (0, 0):
                raise ValueError(
                    f"M1 transitions connect S-wave channels, got {self.initial.channel} -> {self.final.channel}"
                )
            if self.operator is not None:
                raise ValueError("M1 transitions take no operator")
        else:
            channels = {self.initial.channel, self.final.channel}
            if channels != {"1P1", "1S0"}:
                raise ValueError(
                    f"E1 transitions connect 1P1 and 1S0, got {self.initial.channel} -> {self.final.channel}"
                )
            if self.operator is None:
                object.__setattr__(self, "operator", decompose(literal_e1()))

    @property
    def name(self) -> str:
        return f"{self.initial.name}->{self.final.name}"

    @property
    def p_wave(self) -> StateRef:
        return self.initial if self.initial.l == 1 else self.final

    @property
    def s_wave(self) -> StateRef:
        return self.final if self.initial.l == 1 else self.initial

    def with_thetas(self, theta_i: Sequence[float], theta_f: Sequence[float], source: str) -> "TransitionSpec":
        return TransitionSpec(
            initial=StateRef(self.initial.channel, self.initial.index, theta_i),
            final=StateRef(self.final.channel, self.final.index, theta_f),
            kind=self.kind,
            operator=self.operator if self.kind == "E1" else None,
            theta_source=source,
        )

    def as_dict(self) -> dict:
        return dict(
            kind=self.kind,
            initial=self.initial.as_dict(),
            final=self.final.as_dict(),
            theta_source=self.theta_source,
        )

    @classmethod
    def from_dict(cls, d: dict) -> "TransitionSpec":
        def ref(x):
            if isinstance(x, str):
                return StateRef.parse(x)
            return StateRef(x["channel"], x["index"], x.get("theta", ()))

        return cls(
            initial=ref(d["initial"]),
            final=ref(d["final"]),
            kind=d.get("kind", "M1"),
            theta_source=d.get("theta_source", "eigvec"),
        )


@dataclass(frozen=True)
class AmplitudeResult:
    transition: str
    method: str
    mode: str
    value: float
    stderr: float = 0.0
    shots: int = 0
    trials: int = 1

    def __post_init__(self):
        if not self.stderr >= 0:
            raise ValueError(f"Standard error must be non-negative, got {self.stderr}")

    HEADER = ("transition", "method", "mode", "shots", "trials", "value", "stderr")

    def as_row(self) -> Tuple:
        return (
            self.transition,
            self.method,
            self.mode,
            self.shots,
            self.trials,
            format_float(self.value),
            format_float(self.stderr),
        )


def _table(kind: str, rows) -> Tuple[TransitionSpec, ...]:
    return tuple(
        TransitionSpec(StateRef(ci, ni), StateRef(cf, nf), kind=kind) for ci, ni, cf, nf in rows
    )


# the six tabulated magnetic-dipole transitions
M1_TRANSITIONS: Tuple[TransitionSpec, ...] = _table(
    "M1",
    [
        ("3S1", 1, "1S0", 1),
        ("3S1", 2, "1S0", 1),
        ("3S1", 2, "1S0", 2),
        ("3S1", 3, "1S0", 2),
        ("1S0", 2, "3S1", 1),
        ("1S0", 3, "3S1", 1),
    ],
)

E1_TRANSITIONS: Tuple[TransitionSpec, ...] = _table(
    "E1",
    [
        ("1P1", 1, "1S0", 1),
        ("1P1", 2, "1S0", 2),
        ("1S0", 2, "1P1", 1),
        ("1S0", 3, "1P1", 2),
        ("1S0", 3, "1P1", 1),
    ],
)
