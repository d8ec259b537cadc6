""" Zero-noise extrapolation of an M1 overlap by unitary folding."""

import argparse
import logging
import sys
import textwrap

from qvqite.mitigation import DEFAULT_ORDERS, DEFAULT_SCALES, FoldingPlan, zne
from qvqite.sim import RunConfig
from qvqite.transitions import (
    ZNE_METHODS,
    StateRef,
    ThetaSource,
    TransitionSpec,
    m1_direct,
    make_evaluator,
)
from qvqite.utils import Config, Output, RunManifest, save_csv, save_file, stream
from qvqite.scripts._common import (
    add_common_arguments,
    build_config,
    execute,
    make_default_config,
    parse_list,
    sampling_config,
)
from qvqite.scripts._logger import set_up_script_logger

default_config = make_default_config(
    sampling_config,
    mode="sampled",
    noise="default-depol",
    transition="1_3S1->1_1S0",
    method="direct",
    theta_source="eigvec",
    scales=list(DEFAULT_SCALES),
    orders=list(DEFAULT_ORDERS),
    bootstrap=200,
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
    "transition",
    "method",
    "theta_source",
    "scales",
    "orders",
    "bootstrap",
)


def main(args=None, running_as_script: bool = True) -> int:
    config = parse_command_line(args)
    if running_as_script:
        set_up_script_logger(config.get("log", None), config.verbose)
    return execute(config, run, argv=None if args is None else ["qvqite-zne"] + list(args))


def parse_command_line(args=None) -> Config:
    parser = argparse.ArgumentParser(
        description=textwrap.dedent(
            """Fold the circuit of one M1 transition at several noise scales and extrapolate to zero noise.

            Writes zne_scales.csv (per-scale means), zne_fits.csv (one row per fit order) and
            zne_series.csv, a plot-ready series with the folded points, the extrapolated values at
            scale 0 and the noise-free reference.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--transition", help="e.g. 1_3S1->1_1S0", default=None)
    parser.add_argument("--method", choices=list(ZNE_METHODS), default=None)
    parser.add_argument("--theta-source", help="`eigvec` or a qvqite-vqite output directory", default=None)
    parser.add_argument("--scales", help="odd folding scales, e.g. 1,3,5,7", default=None)
    parser.add_argument("--orders", help="polynomial fit orders, e.g. 1,2", default=None)
    parser.add_argument("--bootstrap", help="bootstrap resamples", type=int, default=None)
    add_common_arguments(parser, sampling=True)
    args = parser.parse_args(args=args)
    return build_config(args, default_config, _FLAGS)


def parse_transition(text: str) -> TransitionSpec:
    try:
        initial, final = str(text).split("->")
    except ValueError:
        raise ValueError(f"Cannot parse transition `{text}`; expected e.g. 1_3S1->1_1S0")
    return TransitionSpec(StateRef.parse(initial.strip()), StateRef.parse(final.strip()), kind="M1")


def run(config: Config, output: Output, manifest: RunManifest):
    method = str(config.method)
    if method not in ZNE_METHODS:
        raise ValueError(f"Unknown method `{method}`; expected one of {ZNE_METHODS}")
    spec = ThetaSource(str(config.theta_source)).resolve(parse_transition(config.transition))
    run_config = RunConfig.from_config(config).with_changes(mode="sampled")
    plan = FoldingPlan(
        scales=parse_list(config.scales, int),
        orders=parse_list(config.orders, int),
        trials=run_config.trials,
        bootstrap=int(config.bootstrap),
    )
    save_file(spec.as_dict(), {"json": "json"}, output.generate_file("transition.json"))
    logging.info(
        f"ZNE of {spec.name} ({method}) at scales {plan.scales}, {run_config.shots} shots x {plan.trials} trial(s)"
    )

    reference = m1_direct(spec).value
    result = zne(
        make_evaluator(spec, method, run_config),
        plan,
        run_config.noise,
        stream(run_config.seed, "zne-bootstrap", spec.name, method),
        progress=config.progress,
        jobs=int(config.jobs),
    )

    save_csv(
        output.generate_file("zne_scales.csv"),
        ("scale", "mean", "stderr"),
        list(zip(result.scales, result.means, result.stderrs)),
    )
    save_csv(
        output.generate_file("zne_fits.csv"),
        ("order", "value", "bootstrap_std", "physical"),
        [(f.order, f.value, f.bootstrap_std, f.physical) for f in result.fits],
    )
    series = [("folded", s, m, e) for s, m, e in zip(result.scales, result.means, result.stderrs)]
    series += [(f"extrapolated-order{f.order}", 0, f.value, f.bootstrap_std) for f in result.fits]
    series.append(("noise-free", 0, reference, 0.0))
    save_csv(output.generate_file("zne_series.csv"), ("series", "scale", "value", "stderr"), series)

    print(f"noise-free: {reference:.4f}")
    print(f"scale 1:    {result.means[0]:.4f} +- {result.stderrs[0]:.4f}")
    for f in result.fits:
        flag = "" if f.physical else "  (unphysical, not reported)"
        print(f"order {f.order}:    {f.value:.4f} +- {f.bootstrap_std:.4f}{flag}")


if __name__ == "__main__":
    sys.exit(main())
