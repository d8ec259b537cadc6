""" Decompose a matrix into Pauli strings."""

import argparse
import logging
import sys

from qvqite.pauliops import decompose, format_table, reconstruct
from qvqite.quarkmodel import HamiltonianMatrix, literal_e1, literal_hamiltonian
from qvqite.utils import Config, Output, RunManifest, atomic_write, save_file
from qvqite.scripts._common import add_common_arguments, build_config, execute, make_default_config
from qvqite.scripts._logger import set_up_script_logger

default_config = make_default_config(
    matrix=None,
    channel="1S0",
    roundtrip=False,
    digits=4,
)

_FLAGS = ("out", "append", "log", "verbose", "warn_unused", "seed", "jobs", "matrix", "channel", "roundtrip", "digits")


def main(args=None, running_as_script: bool = True) -> int:
    config = parse_command_line(args)
    if running_as_script:
        set_up_script_logger(config.get("log", None), config.verbose)
    return execute(config, run, argv=None if args is None else ["qvqite-pauli"] + list(args))


def parse_command_line(args=None) -> Config:
    parser = argparse.ArgumentParser(
        description="Write a matrix as a weighted sum of Pauli strings. "
        "The matrix is a JSON file written by `qvqite-model matrices`, or a literal matrix named by --channel."
    )
    parser.add_argument("matrix", help="matrix JSON file", nargs="?", default=None)
    parser.add_argument("--channel", help="literal matrix to use without a file: 1S0, 3S1, 1P1 or E1", default=None)
    parser.add_argument(
        "--roundtrip",
        help="rebuild the matrix from the Pauli sum and report the largest deviation",
        action="store_true",
        default=None,
    )
    parser.add_argument("--digits", help="digits in the printed table", type=int, default=None)
    add_common_arguments(parser, sampling=False)
    args = parser.parse_args(args=args)
    return build_config(args, default_config, _FLAGS)


def run(config: Config, output: Output, manifest: RunManifest):
    if config.matrix is not None:
        M = HamiltonianMatrix.load(config.matrix)
        manifest.add_input("matrix", path=config.matrix)
        name = M.channel or "matrix"
    else:
        name = str(config.channel)
        M = literal_e1() if name == "E1" else literal_hamiltonian(name)
        manifest.add_input("matrix", digest=M.sha1())
    S = decompose(M)
    S.save(output.generate_file(f"pauli_{name}.json"))
    table = format_table(S, digits=int(config.digits))
    with atomic_write(output.generate_file(f"pauli_{name}.txt")) as f:
        f.write(table + "\n")
    print(table)
    if config.roundtrip:
        deviation = float((reconstruct(S) - M.entries).abs().max())
        logging.info(f"Round trip: largest deviation {deviation:.3e}")
        print(f"max deviation: {deviation:.3e}")
        save_file(
            dict(matrix=name, max_deviation=deviation),
            {"json": "json"},
            output.generate_file(f"roundtrip_{name}.json"),
        )


if __name__ == "__main__":
    sys.exit(main())
