import math

import numpy as np
import pytest
import torch

from qvqite.sim import (
    CNOT,
    CSWAP,
    RX,
    RY,
    Circuit,
    Gate,
    H,
    Param,
    StateVector,
    X,
    ansatz,
    ansatz_amplitudes,
    overlap_circuit,
    pauli_gate,
    run,
    theta_from_amplitudes,
)

THETAS = [(0.0, 0.0, 0.0), (0.5, 0.5, 0.5), (1.1, -0.4, 2.7), (math.pi, 0.3, -1.2)]


class TestGates:
    @pytest.mark.parametrize(
        "gate",
        [RY(0, 0.7), RX(0, -1.3), H(0), X(0), CNOT(0, 1), CSWAP(0, 1, 2), pauli_gate("XY", (0, 1))],
    )
    def test_unitary(self, gate):
        U = gate.dense()
        eye = torch.eye(U.shape[0], dtype=torch.complex128)
        assert torch.allclose(U.conj().T @ U, eye, atol=1e-14)
        assert torch.allclose(gate.inverse().dense() @ U, eye, atol=1e-14)

    def test_controlled_block(self):
        U = RY(1, 0.9).controlled(0).dense()
        assert torch.equal(U[:2, :2], torch.eye(2, dtype=torch.complex128))
        assert torch.equal(U[:2, 2:], torch.zeros(2, 2, dtype=torch.complex128))
        assert torch.allclose(U[2:, 2:], RY(0, 0.9).matrix())

    def test_invalid(self):
        with pytest.raises(ValueError):
            Gate("RZ", (0,), param=0.1)
        with pytest.raises(ValueError):
            RY(0, None)
        with pytest.raises(ValueError):
            CNOT(1, 1)
        with pytest.raises(ValueError):
            Gate("SWAP", (0,))

    def test_param(self):
        g = RY(0, Param(2, sign=-1.0))
        assert not g.is_bound
        assert g.angle([0.0, 0.0, 0.4]) == -0.4
        assert g.bind([0.0, 0.0, 0.4]).param == -0.4
        with pytest.raises(ValueError):
            g.angle([0.0])
        with pytest.raises(ValueError):
            g.angle()


class TestRun:
    def test_hadamard(self):
        psi = run(Circuit(1, (H(0),))).vector()
        assert torch.allclose(psi, torch.tensor([1, 1], dtype=torch.complex128) / math.sqrt(2))

    def test_big_endian(self):
        # X on qubit 0 lands on index 2 = |10>
        p = run(Circuit(2, (X(0),))).probabilities()
        assert p.tolist() == [0.0, 0.0, 1.0, 0.0]
        assert run(Circuit(2, (X(0),))).probabilities([1, 0]).tolist() == [0.0, 1.0, 0.0, 0.0]

    def test_bell(self):
        p = run(Circuit(2, (H(0), CNOT(0, 1)))).probabilities()
        assert np.allclose(p, [0.5, 0.0, 0.0, 0.5])

    def test_cswap(self):
        psi = run(Circuit(3, (X(0), X(1), CSWAP(0, 1, 2))))
        assert psi.probabilities()[0b101] == pytest.approx(1.0)
        psi = run(Circuit(3, (X(1), CSWAP(0, 1, 2))))
        assert psi.probabilities()[0b010] == pytest.approx(1.0)

    def test_matches_dense(self):
        circuit = Circuit(3, (H(0), RY(2, 0.3).controlled(0), CNOT(2, 1), RX(1, 1.9)))
        basis = torch.eye(8, dtype=torch.complex128)
        dense = basis.clone()
        for g in circuit.gates:
            full = torch.stack(
                [run(Circuit(3, (g,)), initial=StateVector.from_vector(basis[:, j])).vector() for j in range(8)],
                dim=1,
            )
            dense = full @ dense
        assert torch.allclose(run(circuit).vector(), dense[:, 0])

    def test_norm(self):
        for theta in THETAS:
            assert run(ansatz(theta)).norm() == pytest.approx(1.0, abs=1e-14)

    def test_state_vector(self):
        with pytest.raises(ValueError):
            StateVector.from_vector([1.0, 0.0, 0.0])


class TestCircuit:
    def test_register(self):
        with pytest.raises(ValueError):
            Circuit(1, (CNOT(0, 1),))
        with pytest.raises(ValueError):
            Circuit(2) + Circuit(3)

    def test_inverse(self):
        c = ansatz((1.1, -0.4, 2.7))
        psi = run(c + c.inverse()).vector()
        assert abs(complex(psi[0])) == pytest.approx(1.0, abs=1e-14)

    def test_remap_and_control(self):
        base = ansatz((0.2, 0.3, 0.4)).remap({0: 1, 1: 2}, n_qubits=3)
        c = base.controlled(0)
        assert c.n_qubits == 3
        for g, orig in zip(c.gates, base.gates):
            assert g.controls == (0,) + orig.controls
            assert g.targets == orig.targets
        # the entangling CNOT becomes a Toffoli
        assert [g.controls for g in c.gates if g.kind == "X"] == [(0, 1)]
        # control off: nothing happens
        assert run(c).probabilities()[0] == pytest.approx(1.0)

    def test_slots(self):
        c = ansatz(first_slot=3)
        assert c.slots == (3, 4, 5)
        c.check_shift_rule()
        with pytest.raises(ValueError):
            c.controlled(0).check_shift_rule()
        with pytest.raises(ValueError):
            Circuit(1, (RY(0, Param(0)), RX(0, Param(0)))).check_shift_rule()


class TestAnsatz:
    def test_examples(self):
        assert np.allclose(ansatz_amplitudes((0, 0, 0)), [1, 0, 0, 0])
        assert np.allclose(ansatz_amplitudes((math.pi, 0, 0)), [0, 0, 0, 1])
        psi = run(ansatz((0.5, 0.5, 0.5))).vector().real.numpy()
        assert np.allclose(psi, ansatz_amplitudes((0.5, 0.5, 0.5)), atol=1e-14)

    @pytest.mark.parametrize("theta", THETAS)
    def test_closed_form(self, theta):
        psi = run(ansatz(theta)).vector()
        assert torch.allclose(psi.imag, torch.zeros(4, dtype=torch.float64))
        assert np.allclose(psi.real.numpy(), ansatz_amplitudes(theta), atol=1e-14)

    def test_unbound(self):
        c = ansatz()
        assert np.allclose(
            run(c, theta=(1.1, -0.4, 2.7)).vector().real.numpy(),
            ansatz_amplitudes((1.1, -0.4, 2.7)),
        )
        with pytest.raises(ValueError):
            ansatz((0.1, 0.2))

    @pytest.mark.parametrize("seed", range(5))
    def test_inversion(self, seed):
        v = np.random.default_rng(seed).normal(size=4)
        v /= np.linalg.norm(v)
        assert np.allclose(ansatz_amplitudes(theta_from_amplitudes(v)), v, atol=1e-12)

    def test_inversion_invalid(self):
        with pytest.raises(ValueError):
            theta_from_amplitudes([0.0, 0.0, 0.0, 0.0])
        with pytest.raises(ValueError):
            theta_from_amplitudes([1.0, 0.0])

    def test_overlap_circuit(self):
        ti, tf = (1.1, -0.4, 2.7), (0.5, 0.5, 0.5)
        expected = np.dot(ansatz_amplitudes(tf), ansatz_amplitudes(ti)) ** 2
        assert run(overlap_circuit(ti, tf)).probabilities()[0] == pytest.approx(expected, abs=1e-12)
