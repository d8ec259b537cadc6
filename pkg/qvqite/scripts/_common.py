"""Flags, configuration and run bookkeeping shared by the console scripts."""

import argparse
import logging
import warnings
from pathlib import Path
from typing import Callable, Iterable, Optional

import yaml

from qvqite.utils import (
    BracketError,
    Config,
    ConvergenceError,
    NormalizationError,
    Output,
    QuadratureError,
    RunManifest,
    SolverBreakdown,
    resolve_seed,
)
from qvqite.utils._global_options import _set_global_options
from qvqite.utils.config import _GLOBAL_ALL_ASKED_FOR_KEYS

EXIT_OK: int = 0
EXIT_USAGE: int = 2
EXIT_NUMERICAL: int = 3

_NUMERICAL_ERRORS = (
    ConvergenceError,
    SolverBreakdown,
    BracketError,
    NormalizationError,
    QuadratureError,
)
_USAGE_ERRORS = (ValueError, KeyError, TypeError, OSError, yaml.YAMLError)

# keys every command understands
common_config = dict(
    out="./qvqite_out",
    append=False,
    verbose="INFO",
    log=None,
    warn_unused=False,
    seed=None,
    jobs=1,
    default_dtype="float64",
    torch_threads=None,
    progress=None,
)

sampling_config = dict(
    mode="exact",
    shots=20000,
    trials=1,
    noise=None,
    mitigate_readout=False,
)

physics_config = dict(
    alpha_s=0.5461,
    b_conf=0.1425,
    m_c=1.4794,
    sigma=1.0946,
    hbar_c=0.19732,
)


def make_default_config(*parts: dict, **extra) -> dict:
    config = dict(common_config)
    for p in parts:
        config.update(p)
    config.update(extra)
    _GLOBAL_ALL_ASKED_FOR_KEYS.update(config.keys())
    return config


def add_common_arguments(parser: argparse.ArgumentParser, sampling: bool = True):
    """Flags shared by all commands. Every default is None so that only flags
    given explicitly override the config file."""
    parser.add_argument("--config", help="YAML or JSON file with option values", type=Path, default=None)
    parser.add_argument("--out", help="output directory", type=str, default=None)
    parser.add_argument(
        "--append",
        help="allow writing into an existing, non-empty output directory",
        action="store_true",
        default=None,
    )
    parser.add_argument("--log", help="log file to store all the screen logging", type=Path, default=None)
    parser.add_argument(
        "--verbose",
        help="logging verbosity level",
        type=str,
        default=None,
        choices=["debug", "info", "warning", "error", "critical", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
    )
    parser.add_argument(
        "--warn-unused",
        help="warn instead of error when the config contains unused keys",
        action="store_true",
        default=None,
    )
    parser.add_argument("--seed", help="master seed (falls back to $QVQITE_SEED)", type=int, default=None)
    parser.add_argument("--jobs", help="worker processes for independent tasks; 0 uses every available core", type=int, default=None)
    if sampling:
        parser.add_argument(
            "--mode",
            help="evaluate quantities exactly or from finite shots",
            choices=["exact", "sampled"],
            default=None,
        )
        parser.add_argument("--shots", help="shots per circuit evaluation", type=int, default=None)
        parser.add_argument("--trials", help="independent repetitions (sampled mode)", type=int, default=None)
        parser.add_argument(
            "--noise",
            help="noise model: none, default-readout, default-depol, default-full or a JSON file",
            type=str,
            default=None,
        )
        parser.add_argument(
            "--mitigate-readout",
            help="apply readout-error mitigation to every measured histogram",
            action="store_true",
            default=None,
        )


def build_config(args: argparse.Namespace, default_config: dict, flags: Iterable[str]) -> Config:
    """Defaults, then the ``--config`` file, then flags given on the command line."""
    if args.config is not None:
        config = Config.from_file(str(args.config), defaults=default_config)
    else:
        config = Config.from_dict({}, defaults=default_config)
    for flag in flags:
        value = getattr(args, flag, None)
        if value is not None:
            config[flag] = str(value) if isinstance(value, Path) else value
    return config


def check_unused(config: Config):
    unused = config._unused_keys()
    if len(unused) > 0:
        message = (
            f"The following keys in the config were not used, did you make a typo?: {', '.join(unused)}. "
            "You can turn this error into a warning with `--warn-unused`."
        )
        if config.get("warn_unused", False):
            warnings.warn(message)
        else:
            raise KeyError(message)


def execute(
    config: Config,
    body: Callable[[Config, Output, RunManifest], None],
    argv: Optional[list] = None,
) -> int:
    """Run one command: set up the output directory, call ``body`` and record
    the manifest and resolved config whatever the outcome.

    Returns the process exit code.
    """
    try:
        check_unused(config)
        config["seed"] = resolve_seed(config.get("seed", None))
        _set_global_options(config)
        output = Output(config["out"], append=config.get("append", False))
    except _USAGE_ERRORS as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE

    manifest = RunManifest.start(Config.as_dict(config), seed=config["seed"], argv=argv)
    code = EXIT_OK
    try:
        body(config, output, manifest)
    except _NUMERICAL_ERRORS as e:
        logging.error(f"{type(e).__name__}: {e}")
        code = EXIT_NUMERICAL
    except _USAGE_ERRORS as e:
        logging.error(f"{type(e).__name__}: {e}")
        code = EXIT_USAGE
    except BaseException:
        code = 1
        raise
    finally:
        config.save(output.generate_file("config.yaml"))
        output.write_manifest(manifest, exit_code=code)
    logging.info(f"Outputs in {output.workdir} (exit code {code})")
    return code


def parse_list(text, cast=float) -> tuple:
    """``"1,3,5"`` or a YAML list -> tuple."""
    if isinstance(text, (list, tuple)):
        return tuple(cast(x) for x in text)
    return tuple(cast(x) for x in str(text).split(",") if x.strip() != "")
