""" M1 and E1 transition amplitudes from circuits."""

import argparse
import logging
import sys
import textwrap
from typing import List

from qvqite.quarkmodel import ModelParams, RadialGrid
from qvqite.sim import RunConfig
from qvqite.transitions import (
    E1_TRANSITIONS,
    M1_TRANSITIONS,
    AmplitudeResult,
    GridSolutions,
    ThetaSource,
    TransitionSpec,
    check_method,
    evaluate_transitions,
    grid_amplitude,
)
from qvqite.utils import Config, Output, RunManifest, load_file, save_csv, save_file
from qvqite.scripts._common import (
    add_common_arguments,
    build_config,
    execute,
    make_default_config,
    physics_config,
    sampling_config,
)
from qvqite.scripts._logger import set_up_script_logger

default_config = make_default_config(
    physics_config,
    sampling_config,
    kind="m1",
    method=None,
    theta_source="eigvec",
    transitions=None,
    exact_grid=True,
    grid_h=0.001,
    grid_r_max=15.0,
)

_FLAGS = (
    "out",
    "append",
    "log",
    "verbose",
    "warn_unused",
    "seed",
    "jobs",
    "mode",
    "shots",
    "trials",
    "noise",
    "mitigate_readout",
    "kind",
    "method",
    "theta_source",
    "transitions",
    "exact_grid",
)

_DEFAULT_METHOD = {"m1": "direct", "e1": "hadamard"}


def main(args=None, running_as_script: bool = True) -> int:
    config = parse_command_line(args)
    if running_as_script:
        set_up_script_logger(config.get("log", None), config.verbose)
    return execute(config, run, argv=None if args is None else ["qvqite-amp"] + list(args))


def parse_command_line(args=None) -> Config:
    parser = argparse.ArgumentParser(
        description=textwrap.dedent(
            """Transition amplitudes between model states.

            m1: squared spatial overlaps, by the inverse-circuit (direct) or swap-test circuit.
            e1: |<P| r |S>| in fm by Hadamard tests over the Pauli terms of the E1 operator.

            Without --transitions the tabulated transition lists are used. Angles come from the
            eigenvectors of the literal Hamiltonians (--theta-source eigvec) or from the
            spectrum_<channel>.json files of a qvqite-vqite output directory.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("kind", choices=["m1", "e1"], nargs="?", default=None)
    parser.add_argument("--method", choices=["direct", "swap", "hadamard"], default=None)
    parser.add_argument("--theta-source", help="`eigvec` or a qvqite-vqite output directory", default=None)
    parser.add_argument("--transitions", help="JSON file with a list of transitions", default=None)
    parser.add_argument(
        "--exact-grid",
        help="also emit reference values from the radial-equation wave functions",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    add_common_arguments(parser, sampling=True)
    args = parser.parse_args(args=args)
    return build_config(args, default_config, _FLAGS)


def _load_transitions(config: Config, manifest: RunManifest, kind: str) -> List[TransitionSpec]:
    if config.transitions is None:
        return list(M1_TRANSITIONS if kind == "M1" else E1_TRANSITIONS)
    d = load_file({"json": "json"}, config.transitions)
    manifest.add_input("transitions", path=config.transitions)
    entries = d["transitions"] if isinstance(d, dict) else d
    specs = [TransitionSpec.from_dict({"kind": kind, **e}) for e in entries]
    for s in specs:
        if s.kind != kind:
            raise ValueError(f"Transition {s.name} is {s.kind}, but the command computes {kind}")
    return specs


def _print(results: List[AmplitudeResult]):
    for r in results:
        print(f"{r.transition:<16} {r.method:<20} {r.value:.4f} +- {r.stderr:.4f}")


def run(config: Config, output: Output, manifest: RunManifest):
    kind = str(config.kind).upper()
    method = config.method if config.method is not None else _DEFAULT_METHOD[kind.lower()]
    check_method(kind, method)
    run_config = RunConfig.from_config(config)
    jobs = int(config.jobs)

    source = ThetaSource(str(config.theta_source))
    specs = source.resolve_all(_load_transitions(config, manifest, kind))
    save_file(
        dict(kind=kind, theta_source=source.source, transitions=[s.as_dict() for s in specs]),
        {"json": "json"},
        output.generate_file(f"transitions_{kind.lower()}.json"),
    )
    logging.info(f"{len(specs)} {kind} transition(s), method {method}, mode {run_config.mode}, θ from {source.source}")

    results: List[AmplitudeResult] = []
    noise = run_config.noise
    if kind == "M1" and method == "direct" and not run_config.exact and noise is not None and noise.has_readout and run_config.mitigate_readout:
        # noise-free, raw and readout-mitigated rows for every transition; raw and
        # mitigated share stream ids, so the mitigated rows correct the same histograms
        clean = evaluate_transitions(specs, method, run_config.with_changes(noise=None, mitigate_readout=False), jobs)
        raw = evaluate_transitions(specs, method, run_config.with_changes(mitigate_readout=False), jobs, tag="ro")
        mitigated = evaluate_transitions(specs, method, run_config, jobs, tag="ro")
        for c, r, m in zip(clean, raw, mitigated):
            results += [
                c,
                AmplitudeResult(r.transition, "direct+ro", r.mode, r.value, r.stderr, r.shots, r.trials),
                AmplitudeResult(m.transition, "direct+ro-mitigated", m.mode, m.value, m.stderr, m.shots, m.trials),
            ]
    else:
        results += evaluate_transitions(specs, method, run_config, jobs)

    if config.exact_grid:
        solutions = GridSolutions(
            ModelParams.from_config(config),
            RadialGrid(h=float(config.grid_h), r_max=float(config.grid_r_max)),
        )
        results += [grid_amplitude(s, solutions) for s in specs]

    save_csv(
        output.generate_file(f"amplitudes_{kind.lower()}.csv"),
        AmplitudeResult.HEADER,
        [r.as_row() for r in results],
    )
    _print(results)


if __name__ == "__main__":
    sys.exit(main())
