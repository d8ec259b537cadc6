from .savenload import (
    save_file,
    load_file,
    save_csv,
    load_csv,
    format_float,
    sha1_file,
    atomic_write,
)
from .config import Config
from .output import Output, RunManifest
from .rng import stream, resolve_seed
from .multiprocessing import num_tasks, parallel_map
from .errors import (
    QuadratureError,
    BracketError,
    NormalizationError,
    SolverBreakdown,
    ConvergenceError,
)

__all__ = [
    save_file,
    load_file,
    save_csv,
    load_csv,
    format_float,
    sha1_file,
    atomic_write,
    Config,
    Output,
    RunManifest,
    stream,
    resolve_seed,
    num_tasks,
    parallel_map,
    QuadratureError,
    BracketError,
    NormalizationError,
    SolverBreakdown,
    ConvergenceError,
]
