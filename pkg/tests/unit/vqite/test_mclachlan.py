import math

import numpy as np
import pytest

from qvqite.sim import RY, Circuit, Param, ansatz, ansatz_amplitudes
from qvqite.vqite import (
    EvolutionConfig,
    check_penalty,
    energy,
    gershgorin_range,
    gradient,
    hessian,
    metric,
    solve,
    step,
)


class TestDerivatives:
    def test_cosine(self):
        grad = gradient([0.3, -1.2], lambda t: math.cos(t[0]) + 2.0 * math.sin(t[1]))
        assert np.allclose(grad, [-math.sin(0.3), 2.0 * math.cos(-1.2)], atol=1e-14)

    def test_hessian_cosine(self):
        Hm = hessian([0.3, 0.7], lambda t: math.cos(t[0]) * math.cos(t[1]))
        expected = [
            [-math.cos(0.3) * math.cos(0.7), math.sin(0.3) * math.sin(0.7)],
            [math.sin(0.3) * math.sin(0.7), -math.cos(0.3) * math.cos(0.7)],
        ]
        assert np.allclose(Hm, expected, atol=1e-14)

    def test_energy_gradient_matches_finite_difference(self, H_1S0, exact_executor):
        config = EvolutionConfig()
        theta = np.array([0.4, -0.9, 1.3])

        def f(x):
            return energy(x, H_1S0, [(0.1, 0.2, 0.3)], config, exact_executor)

        grad = gradient(theta, f, circuit=ansatz())
        h = 1e-6
        fd = [(f(theta + h * e) - f(theta - h * e)) / (2 * h) for e in np.eye(3)]
        assert np.allclose(grad, fd, atol=1e-6)

    def test_rejects_shared_slot(self):
        shared = Circuit(1, (RY(0, Param(0)), RY(0, Param(0))))
        with pytest.raises(ValueError):
            gradient([0.1], lambda t: 0.0, circuit=shared)

    def test_penalty_is_stationary_on_its_state(self, H_1S0, exact_executor):
        config = EvolutionConfig()
        theta = (0.4, -0.9, 1.3)

        def plain(x):
            return energy(x, H_1S0, [], config, exact_executor)

        def penalized(x):
            return energy(x, H_1S0, [theta], config, exact_executor)

        assert np.allclose(gradient(theta, plain), gradient(theta, penalized), atol=1e-10)


class TestEnergy:
    def test_reference_state(self, H_1S0, exact_executor):
        config = EvolutionConfig()
        zero = (0.0, 0.0, 0.0)
        assert energy(zero, H_1S0, [], config, exact_executor) == pytest.approx(0.9431, abs=1e-10)
        # the penalty of a state against itself is the full alpha
        assert energy(zero, H_1S0, [zero], config, exact_executor) == pytest.approx(
            0.9431 + 20.0, abs=1e-10
        )

    def test_sampled(self, H_1S0, sampled_executor):
        value = energy((0.0, 0.0, 0.0), H_1S0, [], EvolutionConfig(), sampled_executor)
        assert abs(value - 0.9431) < 0.1


class TestMetric:
    def test_reference_state(self, exact_executor):
        A = metric((0.0, 0.0, 0.0), exact_executor)
        assert np.allclose(A, 0.25 * np.eye(3), atol=1e-12)

    @pytest.mark.parametrize("theta", [(0.5, 0.5, 0.5), (1.1, -0.4, 2.7)])
    def test_matches_jacobian(self, theta, exact_executor):
        theta = np.array(theta)
        h = 1e-6
        J = np.stack(
            [
                (ansatz_amplitudes(theta + h * e) - ansatz_amplitudes(theta - h * e)) / (2 * h)
                for e in np.eye(3)
            ],
            axis=1,
        )
        A = metric(theta, exact_executor)
        assert np.allclose(A, J.T @ J, atol=1e-6)
        assert np.all(np.linalg.eigvalsh(A) > -1e-12)


class TestSolve:
    def test_diagonal(self):
        system = solve(np.diag([1.0, 2.0, 4.0]), np.ones(3), epsilon=0.0)
        assert np.allclose(system.theta_dot, [1.0, 0.5, 0.25])
        assert not system.used_pinv
        assert system.theta_dot_norm == pytest.approx(math.sqrt(1 + 0.25 + 0.0625))

    def test_regularization(self):
        system = solve(np.diag([1.0, 0.0, 0.0]), np.array([1.0, 1.0, 0.0]), epsilon=1.0)
        assert np.allclose(system.theta_dot, [0.5, 1.0, 0.0])

    def test_pinv_fallback(self):
        system = solve(np.zeros((3, 3)), np.array([1.0, 0.0, 0.0]), epsilon=0.0)
        assert system.used_pinv
        assert np.allclose(system.theta_dot, 0.0)


class TestStep:
    def test_lowers_energy(self, H_1S0, exact_executor):
        config = EvolutionConfig()
        theta = np.array(config.theta_init)
        E0 = energy(theta, H_1S0, [], config, exact_executor)
        theta_next, system = step(theta, H_1S0, [], config, exact_executor)
        assert energy(theta_next, H_1S0, [], config, exact_executor) < E0
        assert np.allclose(theta_next, theta + config.dtau * system.theta_dot)


class TestPenalty:
    def test_gershgorin(self, H_1S0):
        assert gershgorin_range(H_1S0) == pytest.approx(8.9266 + 1.2593, abs=1e-6)

    def test_check(self, H_1S0):
        check_penalty(H_1S0, EvolutionConfig())
        with pytest.raises(ValueError):
            check_penalty(H_1S0, EvolutionConfig(penalty_alpha=5.0))
