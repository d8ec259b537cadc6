"""Where the circuit angles of the transition states come from.

``eigvec``: invert the ansatz on the eigenvectors of the literal Hamiltonian.
A directory: read the ``spectrum_<channel>.json`` files written by
``qvqite-vqite``.
"""

import logging
from os.path import isdir, isfile, join
from typing import Dict, List, Sequence, Tuple

from qvqite.quarkmodel import diagonalize, get_channel, literal_hamiltonian
from qvqite.sim import theta_from_amplitudes
from qvqite.utils import load_file
from qvqite.utils.output import MANIFEST_NAME
from qvqite.utils.versions import check_code_version

from ._spec import TransitionSpec

EIGVEC = "eigvec"


def spectrum_filename(channel) -> str:
    return f"spectrum_{get_channel(channel).label}.json"


def eigvec_thetas(channel, matrix=None) -> List[Tuple[float, ...]]:
    """Angles of every eigenvector of ``matrix`` (the literal Hamiltonian by
    default), in ascending energy order."""
    if matrix is None:
        matrix = literal_hamiltonian(channel)
    vectors = diagonalize(matrix).eigenvectors
    return [
        tuple(float(t) for t in theta_from_amplitudes(vectors[:, k].numpy()))
        for k in range(vectors.shape[1])
    ]


def load_thetas(directory: str, channel) -> List[Tuple[float, ...]]:
    filename = join(directory, spectrum_filename(channel))
    if not isfile(filename):
        raise ValueError(f"No spectrum for channel {get_channel(channel).label} in {directory}")
    manifest = join(directory, MANIFEST_NAME)
    if isfile(manifest):
        check_code_version(load_file({"json": "json"}, manifest))
    d = load_file(supported_formats={"json": "json"}, filename=filename)
    levels = sorted(d["levels"], key=lambda lv: lv["E"])
    return [tuple(float(t) for t in lv["theta"]) for lv in levels]


class ThetaSource:
    """Cached lookup of per-channel angle lists from one source."""

    def __init__(self, source: str = EIGVEC):
        if source != EIGVEC and not isdir(source):
            raise ValueError(f"θ source must be `{EIGVEC}` or a vqite output directory, got {source!r}")
        self.source = source
        self._cache: Dict[str, List[Tuple[float, ...]]] = {}

    def thetas(self, channel) -> List[Tuple[float, ...]]:
        label = get_channel(channel).label
        if label not in self._cache:
            if self.source == EIGVEC:
                self._cache[label] = eigvec_thetas(label)
            else:
                self._cache[label] = load_thetas(self.source, label)
            logging.debug(f"θ for {label} from {self.source}: {len(self._cache[label])} levels")
        return self._cache[label]

    def theta(self, channel, index: int) -> Tuple[float, ...]:
        levels = self.thetas(channel)
        if not 1 <= index <= len(levels):
            raise ValueError(
                f"{get_channel(channel).label} level {index} is not available from {self.source} "
                f"({len(levels)} levels)"
            )
        return levels[index - 1]

    def resolve(self, spec: TransitionSpec) -> TransitionSpec:
        """``spec`` with both states' angles filled in from this source."""
        return spec.with_thetas(
            self.theta(spec.initial.channel, spec.initial.index),
            self.theta(spec.final.channel, spec.final.index),
            self.source,
        )

    def resolve_all(self, specs: Sequence[TransitionSpec]) -> List[TransitionSpec]:
        return [self.resolve(s) for s in specs]
