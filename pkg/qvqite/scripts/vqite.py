""" Variational imaginary-time evolution of a channel Hamiltonian."""

import argparse
import hashlib
import json
import logging
import sys
import textwrap
from typing import List, Optional, Sequence

import numpy as np

from qvqite.pauliops import PauliSum, decompose
from qvqite.quarkmodel import (
    BasisSpec,
    HamiltonianMatrix,
    ModelParams,
    ho_matrix,
    literal_hamiltonian,
)
from qvqite.sim import Executor, RunConfig
from qvqite.utils import Config, ConvergenceError, Output, RunManifest, load_file, save_csv, save_file
from qvqite.vqite import EvolutionConfig, Level, spectrum, spectrum_trials
from qvqite.scripts._common import (
    add_common_arguments,
    build_config,
    execute,
    make_default_config,
    parse_list,
    physics_config,
    sampling_config,
)
from qvqite.scripts._logger import set_up_script_logger

default_config = make_default_config(
    physics_config,
    sampling_config,
    channel="1S0",
    hamiltonian=None,
    source="literal",
    omega=1.2,
    states=1,
    deflate=[],
    dtau=0.02,
    theta_init=[0.5, 0.5, 0.5],
    max_steps=300,
    stop_tol=1e-4,
    stop_window=10,
    penalty_alpha=20.0,
    epsilon=None,
    exact_reference=True,
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
    "channel",
    "hamiltonian",
    "source",
    "omega",
    "states",
    "deflate",
    "dtau",
    "max_steps",
    "stop_tol",
    "penalty_alpha",
    "exact_reference",
)


def main(args=None, running_as_script: bool = True) -> int:
    config = parse_command_line(args)
    if running_as_script:
        set_up_script_logger(config.get("log", None), config.verbose)
    return execute(config, run, argv=None if args is None else ["qvqite-vqite"] + list(args))


def parse_command_line(args=None) -> Config:
    parser = argparse.ArgumentParser(
        description=textwrap.dedent(
            """Lowest levels of a two-qubit Hamiltonian by variational imaginary-time evolution.

            Writes one trace CSV per level (per trial in sampled mode) and spectrum_<channel>.json,
            which qvqite-amp accepts as a θ source. Exits with code 3 if a level does not converge;
            the finished levels are still written.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--channel", help="1S0, 3S1 or 1P1", default=None)
    parser.add_argument("--hamiltonian", help="Pauli-sum or matrix JSON file instead of a channel matrix", default=None)
    parser.add_argument("--source", choices=["computed", "literal"], default=None)
    parser.add_argument("--omega", help="oscillator parameter for --source computed", type=float, default=None)
    parser.add_argument("--states", help="number of levels", type=int, default=None)
    parser.add_argument(
        "--deflate",
        help="spectrum JSON files whose levels are penalized from the start",
        nargs="+",
        default=None,
    )
    parser.add_argument("--dtau", type=float, default=None)
    parser.add_argument("--max-steps", type=int, default=None)
    parser.add_argument("--stop-tol", type=float, default=None)
    parser.add_argument("--penalty-alpha", type=float, default=None)
    parser.add_argument(
        "--exact-reference",
        help="in sampled mode, add the exact-mode energies as an E_exact trace column",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    add_common_arguments(parser, sampling=True)
    args = parser.parse_args(args=args)
    return build_config(args, default_config, _FLAGS)


def load_hamiltonian(config: Config, manifest: Optional[RunManifest] = None):
    """Pauli sum and a name for the Hamiltonian selected by ``config``."""
    if config.hamiltonian is not None:
        d = load_file({"json": "json"}, config.hamiltonian)
        if isinstance(d, dict) and "terms" in d:
            H = PauliSum.from_dict(d)
            name = d.get("name", "hamiltonian")
        else:
            M = HamiltonianMatrix.from_dict(d)
            H = decompose(M)
            name = M.channel or "hamiltonian"
        if manifest is not None:
            manifest.add_input("hamiltonian", path=config.hamiltonian)
        return H, name
    channel = str(config.channel)
    if config.source == "literal":
        M = literal_hamiltonian(channel)
    else:
        params = ModelParams.from_config(config)
        M = ho_matrix(channel, BasisSpec.for_channel(channel, float(config.omega), params), params)
    if manifest is not None:
        manifest.add_input("hamiltonian", digest=M.sha1())
    return decompose(M), channel


def _trace_rows(level: Level, reference: Optional[Level]):
    rows = []
    for r in level.trace.records:
        row = [r.step, r.tau, r.E, *r.theta, r.theta_dot_norm]
        if reference is not None:
            ref = reference.trace.records[min(r.step, len(reference.trace.records) - 1)]
            row.append(ref.E)
        rows.append(row)
    return rows


def _write_traces(output: Output, name: str, levels: Sequence[Level], reference, suffix: str = ""):
    header = ["step", "tau", "E", "theta0", "theta1", "theta2", "theta_dot_norm"]
    if reference is not None:
        header.append("E_exact")
    for k, level in enumerate(levels):
        ref = reference[k] if reference is not None and k < len(reference) else None
        header_k = header if ref is not None else header[:7]
        save_csv(
            output.generate_file(f"trace_{name}_level{k + 1}{suffix}.csv"),
            header_k,
            _trace_rows(level, ref),
        )


def _write_spectrum(output: Output, name: str, trials: List[List[Level]], mode: str, converged: bool):
    n = min(len(t) for t in trials)
    levels = []
    for k in range(n):
        energies = np.array([t[k].E for t in trials])
        se = float(energies.std(ddof=1) / np.sqrt(len(energies))) if len(energies) > 1 else 0.0
        levels.append(
            dict(
                index=k + 1,
                E=float(energies.mean()),
                E_stderr=se,
                theta=list(trials[0][k].theta),
                steps=len(trials[0][k].trace) - 1,
                converged=bool(trials[0][k].trace.converged),
                trial_energies=energies.tolist(),
            )
        )
    save_file(
        dict(channel=name, mode=mode, method="vqite", converged=converged, levels=levels),
        {"json": "json"},
        output.generate_file(f"spectrum_{name}.json"),
    )
    for lv in levels:
        print(f"{name} level {lv['index']}: E = {lv['E']:.5f} +- {lv['E_stderr']:.5f} fm^-1")


def run(config: Config, output: Output, manifest: RunManifest):
    H, name = load_hamiltonian(config, manifest)
    manifest.add_input("pauli_sum", digest=hamiltonian_digest(H))
    evolution = EvolutionConfig.from_config(config)
    run_config = RunConfig.from_config(config)
    deflation = []
    for path in parse_list(config.deflate, str):
        manifest.add_input(f"deflate:{path}", path=path)
        d = load_file({"json": "json"}, path)
        deflation += load_thetas_from(d, path)
    n_states = int(config.states)
    logging.info(
        f"VQITE {name}: {n_states} level(s), mode {run_config.mode}, "
        f"{'' if run_config.exact else f'{run_config.shots} shots x {run_config.trials} trials, '}"
        f"{len(deflation)} known state(s)"
    )

    reference = None
    if not run_config.exact and config.exact_reference:
        try:
            reference = spectrum(H, evolution, n_states, Executor(), deflation=deflation)
        except ConvergenceError as e:
            logging.warning(f"Exact reference incomplete: {e}")
            reference = e.partial

    try:
        if run_config.exact:
            trials = [spectrum(H, evolution, n_states, Executor(run_config), progress=config.progress, deflation=deflation)]
        else:
            trials = spectrum_trials(H, evolution, run_config, n_states, jobs=int(config.jobs), deflation=deflation)
    except ConvergenceError as e:
        partial = e.partial or []
        if len(partial) > 0:
            _write_traces(output, name, partial, reference)
            _write_spectrum(output, name, [partial], run_config.mode, converged=False)
        raise

    for t, levels in enumerate(trials):
        _write_traces(output, name, levels, reference, suffix="" if len(trials) == 1 else f"_trial{t}")
    _write_spectrum(output, name, trials, run_config.mode, converged=True)


def load_thetas_from(d: dict, path: str) -> List[tuple]:
    if not isinstance(d, dict) or "levels" not in d:
        raise ValueError(f"{path} is not a spectrum file")
    return [tuple(float(t) for t in lv["theta"]) for lv in d["levels"]]


def hamiltonian_digest(H: PauliSum) -> str:
    return hashlib.sha1(json.dumps(H.as_dict(), sort_keys=True).encode("utf-8")).hexdigest()


if __name__ == "__main__":
    sys.exit(main())
