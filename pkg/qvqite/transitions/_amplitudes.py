import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qvqite.pauliops import PauliString
from qvqite.quarkmodel import ModelParams, RadialGrid, grid_overlap, solve_radial
from qvqite.sim import (
    CSWAP,
    RX,
    RY,
    Circuit,
    Executor,
    RunConfig,
    H,
    X,
    ansatz,
    overlap_circuit,
    pauli_gate,
    trial_summary,
)
from qvqite.utils import parallel_map

from ._spec import AmplitudeResult, TransitionSpec

ANCILLA: int = 0
METHODS = ("direct", "swap", "hadamard", "exact-grid")


def swap_test_circuit(theta_i: Sequence[float], theta_f: Sequence[float]) -> Circuit:
    """Ancilla 0, ψ_i on qubits (1, 2), ψ_f on (3, 4); P(anc = 0) = (1 + |<f|i>|²) / 2."""
    n = 5
    c = Circuit(n, (H(ANCILLA),))
    c = c + ansatz(theta_i, qubits=(1, 2), n_qubits=n) + ansatz(theta_f, qubits=(3, 4), n_qubits=n)
    return c.append(CSWAP(ANCILLA, 1, 3), CSWAP(ANCILLA, 2, 4), H(ANCILLA))


def _controlled_ansatz(theta: Sequence[float]) -> Circuit:
    return ansatz(theta).remap({0: 1, 1: 2}, 3).controlled(ANCILLA)


def hadamard_test_circuit(
    theta_i: Sequence[float],
    theta_f: Sequence[float],
    string: PauliString,
    part: str = "real",
) -> Circuit:
    """Ancilla 0, pair (1, 2). The ancilla's <σx> (``part="real"``) or <σy>
    (``part="imag"``) is the real or imaginary part of <f|P|i>."""
    string = PauliString(str(string))
    if string.n_qubits != 2:
        raise ValueError(f"Expected a two-qubit Pauli string, got {string}")
    c = Circuit(3, (H(ANCILLA),)) + _controlled_ansatz(theta_f)
    c = c.append(X(ANCILLA)) + _controlled_ansatz(theta_i)
    if not string.is_identity():
        c = c.append(pauli_gate(str(string), (1, 2)).controlled(ANCILLA))
    if part == "real":
        return c.append(RY(ANCILLA, -math.pi / 2))
    if part == "imag":
        return c.append(RX(ANCILLA, math.pi / 2))
    raise ValueError(f"part must be 'real' or 'imag', got {part!r}")


def _sigma(circuit: Circuit, executor: Executor) -> Tuple[float, float]:
    """Ancilla <σz> after the circuit: 2 P(0) - 1."""
    p0, se = executor.probability(circuit, 0, measured=(ANCILLA,))
    return 2.0 * p0 - 1.0, 2.0 * se


def _over_trials(
    fn: Callable[[Executor], Tuple[float, float]], executor: Executor
) -> Tuple[float, float, int]:
    if executor.exact:
        value, se = fn(executor)
        return value, se, 1
    values, errors = [], []
    for t in range(executor.config.trials):
        v, e = fn(executor.spawn("trial", t))
        values.append(v)
        errors.append(e)
    value, se = trial_summary(values, errors)
    return value, se, executor.config.trials


def _result(spec: TransitionSpec, method: str, executor: Executor, value, se, trials) -> AmplitudeResult:
    return AmplitudeResult(
        transition=spec.name,
        method=method,
        mode=executor.config.mode,
        value=float(value),
        stderr=float(se),
        shots=0 if executor.exact else executor.config.shots,
        trials=trials,
    )


def _require(spec: TransitionSpec, kind: str, method: str):
    if spec.kind != kind:
        raise ValueError(f"Method `{method}` computes {kind} amplitudes, got a {spec.kind} transition")
    if len(spec.initial.theta) == 0 or len(spec.final.theta) == 0:
        raise ValueError(f"Transition {spec.name} has no circuit angles; resolve them first")


def m1_direct(spec: TransitionSpec, executor: Optional[Executor] = None) -> AmplitudeResult:
    """|<f|i>|² as the |00> probability of U_f† U_i."""
    executor = Executor() if executor is None else executor
    _require(spec, "M1", "direct")
    circuit = overlap_circuit(spec.initial.theta, spec.final.theta)

    def one(ex):
        return ex.probability(circuit, 0, measured=(0, 1))

    return _result(spec, "direct", executor, *_over_trials(one, executor))


def m1_swap(spec: TransitionSpec, executor: Optional[Executor] = None) -> AmplitudeResult:
    """|<f|i>|² = 2 P(anc = 0) - 1 from the swap test."""
    executor = Executor() if executor is None else executor
    _require(spec, "M1", "swap")
    circuit = swap_test_circuit(spec.initial.theta, spec.final.theta)
    return _result(
        spec, "swap", executor, *_over_trials(lambda ex: _sigma(circuit, ex), executor)
    )


def _hadamard_parts(
    theta_i, theta_f, string, executor: Executor
) -> Tuple[float, float, float, float]:
    re, se_re = _sigma(hadamard_test_circuit(theta_i, theta_f, string, "real"), executor.spawn("real"))
    im, se_im = _sigma(hadamard_test_circuit(theta_i, theta_f, string, "imag"), executor.spawn("imag"))
    return re, im, se_re, se_im


def hadamard_term(
    theta_i: Sequence[float],
    theta_f: Sequence[float],
    string,
    executor: Optional[Executor] = None,
) -> complex:
    """<ψ(θ_f)| P |ψ(θ_i)> from the two Hadamard-test circuits."""
    executor = Executor() if executor is None else executor
    re, im, _, _ = _hadamard_parts(theta_i, theta_f, string, executor)
    return complex(re, im)


def _e1_single(spec: TransitionSpec, executor: Executor) -> Tuple[float, float]:
    # <P-wave state| M |S-wave state> whichever way the transition goes
    bra, ket = spec.p_wave.theta, spec.s_wave.theta
    z_re, z_im, var_re, var_im = 0.0, 0.0, 0.0, 0.0
    for k, (c, string) in enumerate(spec.operator.terms):
        x, y, sx, sy = _hadamard_parts(ket, bra, string, executor.spawn("term", k))
        a, b = c.real, c.imag
        z_re += a * x - b * y
        z_im += a * y + b * x
        var_re += (a * sx) ** 2 + (b * sy) ** 2
        var_im += (a * sy) ** 2 + (b * sx) ** 2
    value = math.hypot(z_re, z_im)
    if value == 0.0:
        return 0.0, math.sqrt(var_re + var_im)
    se = math.sqrt(z_re**2 * var_re + z_im**2 * var_im) / value
    return value, se


def e1_amplitude(spec: TransitionSpec, executor: Optional[Executor] = None) -> AmplitudeResult:
    """|Σ_k c_k <P|P_k|S>| in fm, one Hadamard-test pair per Pauli term."""
    executor = Executor() if executor is None else executor
    _require(spec, "E1", "hadamard")
    return _result(
        spec, "hadamard", executor, *_over_trials(lambda ex: _e1_single(spec, ex), executor)
    )


class GridSolutions:
    """Lazily solved radial wave functions, shared across transitions."""

    def __init__(self, params: ModelParams = ModelParams(), grid: RadialGrid = RadialGrid()):
        self.params = params
        self.grid = grid
        self._levels: Dict[str, List] = {}

    def level(self, channel: str, index: int):
        have = self._levels.get(channel, [])
        if len(have) < index:
            self._levels[channel] = solve_radial(channel, self.params, n_levels=max(index, 4), grid=self.grid)
        return self._levels[channel][index - 1]


def grid_amplitude(spec: TransitionSpec, solutions: Optional[GridSolutions] = None) -> AmplitudeResult:
    """Reference value from the numerically exact radial functions: the squared
    overlap for M1, |<u_P| r |u_S>| for E1."""
    solutions = GridSolutions() if solutions is None else solutions
    if spec.kind == "M1":
        u_i = solutions.level(spec.initial.channel, spec.initial.index)
        u_f = solutions.level(spec.final.channel, spec.final.index)
        value = grid_overlap(u_f, u_i) ** 2
    else:
        u_p = solutions.level(spec.p_wave.channel, spec.p_wave.index)
        u_s = solutions.level(spec.s_wave.channel, spec.s_wave.index)
        value = abs(grid_overlap(u_p, u_s, weight="r"))
    return AmplitudeResult(transition=spec.name, method="exact-grid", mode="exact", value=value)


def amplitude(spec: TransitionSpec, method: str, executor: Optional[Executor] = None) -> AmplitudeResult:
    if method == "direct":
        return m1_direct(spec, executor)
    if method == "swap":
        return m1_swap(spec, executor)
    if method == "hadamard":
        return e1_amplitude(spec, executor)
    raise ValueError(f"Unknown method `{method}`; expected one of {METHODS[:3]}")


def check_method(kind: str, method: str):
    """Reject method/kind combinations that have no circuit."""
    allowed = {"M1": ("direct", "swap"), "E1": ("hadamard",)}[kind.upper()]
    if method not in allowed:
        raise ValueError(f"Method `{method}` does not apply to {kind.upper()} transitions; use one of {allowed}")


def _evaluate(job: Tuple[TransitionSpec, str, RunConfig, Tuple]) -> AmplitudeResult:
    spec, method, run_config, ids = job
    return amplitude(spec, method, Executor(run_config, ids))


def evaluate_transitions(
    specs: Sequence[TransitionSpec],
    method: str,
    run_config: RunConfig = RunConfig(),
    jobs: int = 1,
    tag: str = "amp",
) -> List[AmplitudeResult]:
    """One result per transition, in input order. Each transition draws from
    its own stream, so the results do not depend on ``jobs``."""
    work = [(s, method, run_config, (tag, s.name, method)) for s in specs]
    return parallel_map(_evaluate, work, jobs=jobs)
