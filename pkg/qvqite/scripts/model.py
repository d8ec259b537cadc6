""" Build, solve and diagonalize the quark-model Hamiltonian."""

import argparse
import logging
import sys
import textwrap
from typing import List

import numpy as np

from qvqite.quarkmodel import (
    CHANNELS,
    LITERAL_OMEGA,
    PUBLISHED_EIGENVALUES,
    BasisSpec,
    ModelParams,
    RadialGrid,
    diagonalize,
    e1_matrix,
    get_channel,
    ho_matrix,
    literal_e1,
    literal_hamiltonian,
    mass_from_energy,
    solve_radial,
    sweep_omega,
)
from qvqite.sim import theta_from_amplitudes
from qvqite.transitions import spectrum_filename
from qvqite.utils import Config, Output, RunManifest, save_csv, save_file
from qvqite.scripts._common import (
    add_common_arguments,
    build_config,
    execute,
    make_default_config,
    physics_config,
)
from qvqite.scripts._logger import set_up_script_logger

ACTIONS = ("matrices", "exact", "diag", "sweep")

default_config = make_default_config(
    physics_config,
    action="diag",
    channel="1S0",
    omega=LITERAL_OMEGA,
    source="literal",
    states=4,
    levels=4,
    omega_min=0.8,
    omega_max=2.0,
    omega_step=0.05,
    with_exact=True,
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
    "action",
    "channel",
    "omega",
    "source",
    "states",
    "levels",
    "omega_min",
    "omega_max",
    "omega_step",
    "with_exact",
)


def main(args=None, running_as_script: bool = True) -> int:
    config = parse_command_line(args)
    if running_as_script:
        set_up_script_logger(config.get("log", None), config.verbose)
    return execute(config, run, argv=None if args is None else ["qvqite-model"] + list(args))


def parse_command_line(args=None) -> Config:
    parser = argparse.ArgumentParser(
        description=textwrap.dedent(
            """Quark-model Hamiltonian in the oscillator basis.

            matrices: write the Hamiltonian (or, with --channel E1, the E1 operator) as JSON;
                      --source both also writes the computed-vs-literal discrepancies.
            exact:    radial-equation energies and meson masses.
            diag:     eigenvalues of the truncated matrix, plus the ansatz angles of every eigenvector.
            sweep:    eigenvalues over a range of oscillator parameters omega.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("action", choices=ACTIONS, nargs="?", default=None)
    parser.add_argument("--channel", help="1S0, 3S1, 1P1, a comma separated list, `all`, or E1 (matrices only)", default=None)
    parser.add_argument("--omega", help="oscillator parameter, fm⁻¹", type=float, default=None)
    parser.add_argument("--source", choices=["computed", "literal", "both"], default=None)
    parser.add_argument("--states", help="basis size", type=int, default=None)
    parser.add_argument("--levels", help="radial-equation levels for `exact`", type=int, default=None)
    parser.add_argument("--omega-min", type=float, default=None)
    parser.add_argument("--omega-max", type=float, default=None)
    parser.add_argument("--omega-step", type=float, default=None)
    parser.add_argument(
        "--with-exact",
        help="add radial-equation reference energies to every sweep row",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    add_common_arguments(parser, sampling=False)
    if args is None and len(sys.argv) == 1:
        parser.print_help()
        parser.exit()
    args = parser.parse_args(args=args)
    return build_config(args, default_config, _FLAGS)


def _channels(config) -> List[str]:
    value = str(config.channel)
    if value == "all":
        return list(CHANNELS.keys())
    return [c.strip() for c in value.split(",") if c.strip() != ""]


def _matrix(channel: str, source: str, config, params: ModelParams):
    if channel == "E1":
        if source == "literal":
            return literal_e1()
        spec_S = BasisSpec(config.omega, params.mu, l=0, n_states=config.states)
        spec_P = BasisSpec(config.omega, params.mu, l=1, n_states=config.states)
        return e1_matrix(spec_S, spec_P)
    if source == "literal":
        if config.omega != LITERAL_OMEGA or config.states != 4:
            raise ValueError(
                f"Literal matrices exist only for omega = {LITERAL_OMEGA} and 4 states"
            )
        return literal_hamiltonian(channel)
    spec = BasisSpec.for_channel(channel, config.omega, params, n_states=config.states)
    return ho_matrix(channel, spec, params)


def _grid(config) -> RadialGrid:
    return RadialGrid(h=float(config.grid_h), r_max=float(config.grid_r_max))


def run(config: Config, output: Output, manifest: RunManifest):
    params = ModelParams.from_config(config)
    action = config.action
    if action not in ACTIONS:
        raise ValueError(f"Unknown action `{action}`; expected one of {ACTIONS}")
    channels = _channels(config)
    for channel in channels:
        if channel == "E1" and action != "matrices":
            raise ValueError("The E1 operator is only available for `matrices`")
        if channel != "E1":
            get_channel(channel)
    logging.info(f"qvqite-model {action} for {', '.join(channels)}")
    {"matrices": _matrices, "exact": _exact, "diag": _diag, "sweep": _sweep}[action](
        config, output, manifest, params, channels
    )


def _matrices(config, output, manifest, params, channels):
    sources = ["computed", "literal"] if config.source == "both" else [config.source]
    for channel in channels:
        built = {}
        for source in sources:
            M = _matrix(channel, source, config, params)
            built[source] = M
            M.save(output.generate_file(f"matrix_{channel}_{source}.json"))
            manifest.add_input(f"matrix_{channel}_{source}", digest=M.sha1())
        if len(built) == 2:
            computed = built["computed"].real().numpy()
            literal = built["literal"].real().numpy()
            rows = []
            for i in range(computed.shape[0]):
                for j in range(computed.shape[1]):
                    rows.append((i, j, computed[i, j], literal[i, j], abs(computed[i, j] - literal[i, j])))
            save_csv(
                output.generate_file(f"discrepancy_{channel}.csv"),
                ("i", "j", "computed", "literal", "abs_diff"),
                rows,
            )
            worst = max(rows, key=lambda r: r[-1])
            logging.info(
                f"{channel}: largest computed-vs-literal discrepancy {worst[-1]:.4f} at ({worst[0]}, {worst[1]})"
            )


def _exact(config, output, manifest, params, channels):
    for channel in channels:
        solutions = solve_radial(channel, params, n_levels=int(config.levels), grid=_grid(config))
        rows = [(s.level, s.E, mass_from_energy(s.E, params)) for s in solutions]
        save_csv(output.generate_file(f"exact_{channel}.csv"), ("state", "E", "mass_MeV"), rows)
        for level, E, mass in rows:
            print(f"{channel} {level}: E = {E:.4f} fm^-1, M = {mass:.1f} MeV")


def _diag(config, output, manifest, params, channels):
    sources = ["computed", "literal"] if config.source == "both" else [config.source]
    for channel in channels:
        for source in sources:
            M = _matrix(channel, source, config, params)
            manifest.add_input(f"matrix_{channel}_{source}", digest=M.sha1())
            result = diagonalize(M)
            E = result.eigenvalues.numpy()
            published = PUBLISHED_EIGENVALUES.get(channel) if source == "literal" else None
            header = ["state", "E"] + (["published", "residual"] if published else [])
            rows = []
            for k, e in enumerate(E):
                row = [k + 1, float(e)]
                if published:
                    row += [published[k], float(e) - published[k]]
                rows.append(row)
            save_csv(output.generate_file(f"diag_{channel}_{source}.csv"), header, rows)
            if published:
                worst = float(np.max(np.abs(E - np.asarray(published))))
                logging.info(f"{channel}: largest deviation from the published eigenvalues {worst:.4f} fm^-1")
            print(f"{channel} ({source}): " + ", ".join(f"{e:.4f}" for e in E))
            # angles usable as a θ source by qvqite-amp
            if M.dim == 4:
                levels = [
                    dict(
                        index=k + 1,
                        E=float(E[k]),
                        theta=[float(t) for t in theta_from_amplitudes(result.eigenvectors[:, k].numpy())],
                        eigenvector=result.eigenvectors[:, k].tolist(),
                    )
                    for k in range(len(E))
                ]
                name = spectrum_filename(channel) if source == sources[-1] else f"spectrum_{channel}_{source}.json"
                save_file(
                    dict(channel=channel, source=source, method="diagonalize", levels=levels),
                    {"json": "json"},
                    output.generate_file(name),
                )


def _sweep(config, output, manifest, params, channels):
    omegas = np.arange(
        float(config.omega_min), float(config.omega_max) + 0.5 * float(config.omega_step), float(config.omega_step)
    )
    for channel in channels:
        rows = sweep_omega(
            channel,
            omegas,
            params,
            n_states=int(config.states),
            with_exact=bool(config.with_exact),
            grid=_grid(config),
            jobs=int(config.jobs),
            progress=config.progress,
        )
        n = int(config.states)
        header = ["omega"] + [f"E{k + 1}" for k in range(n)]
        if config.with_exact:
            header += [f"exact{k + 1}" for k in range(n)]
        save_csv(
            output.generate_file(f"sweep_{channel}.csv"),
            header,
            [(r.omega,) + tuple(r.eigenvalues) + tuple(r.exact) for r in rows],
        )


if __name__ == "__main__":
    sys.exit(main())
