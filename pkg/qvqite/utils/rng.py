"""Counter-based random streams.

Every stochastic task draws from its own ``numpy.random.Generator`` keyed by
the master seed and a tuple of integer task ids, so results never depend on
scheduling or the number of worker processes.
"""

from typing import Optional
import logging
import os
import zlib

import numpy as np

SEED_ENV_VAR = "QVQITE_SEED"


def _as_int(key) -> int:
    if isinstance(key, (bool, np.bool_)):
        return int(key)
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError(f"Stream ids must be non-negative, got {key}")
        return int(key)
    # strings and other labels are hashed stably
    return zlib.crc32(str(key).encode("utf-8"))


def stream(seed: int, *ids) -> np.random.Generator:
    """Return the generator for ``(seed, *ids)``."""
    entropy = [_as_int(seed)] + [_as_int(i) for i in ids]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def resolve_seed(seed: Optional[int] = None) -> int:
    """Explicit seed, else ``QVQITE_SEED``, else fresh entropy (which is logged)."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV_VAR, None)
    if env is not None and env.strip() != "":
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR}={env!r} is not an integer")
    seed = int(np.random.SeedSequence().entropy % (2**63))
    logging.info(f"No seed given; using fresh seed {seed}")
    return seed
