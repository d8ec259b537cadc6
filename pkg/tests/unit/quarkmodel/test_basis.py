import math

import numpy as np
import pytest
import torch
from scipy.integrate import quad

from qvqite.quarkmodel import (
    BasisSpec,
    HamiltonianMatrix,
    ModelParams,
    basis_functions,
    e1_closed_form,
    e1_matrix,
    ho_matrix,
    ho_radial,
    literal_e1,
    literal_hamiltonian,
)


@pytest.fixture(scope="module")
def computed(params):
    return {
        c: ho_matrix(c, BasisSpec.for_channel(c, 1.2, params), params).real().numpy()
        for c in ("1S0", "3S1", "1P1")
    }


@pytest.mark.parametrize("l", [0, 1])
def test_orthonormal(l):  # noqa: E741
    nu = 4.5
    for n in range(4):
        for m in range(n, 4):
            value, _ = quad(lambda r: ho_radial(n, l, nu, r) * ho_radial(m, l, nu, r), 0, 20, limit=200)
            assert abs(value - (1.0 if n == m else 0.0)) < 1e-9


def test_positive_at_origin(params):
    spec = BasisSpec(1.2, params.mu, l=0)
    u = basis_functions(spec, [1e-3, 2e-3])
    assert np.all(u > 0)


def test_symmetric(computed):
    for channel, H in computed.items():
        assert np.array_equal(H, H.T), channel


def test_pure_oscillator():
    omega = 1.2
    free = ModelParams(alpha_s=0.0, b_conf=0.0, sigma=0.0)
    spec = BasisSpec.for_channel("1S0", omega, free)
    H = ho_matrix("1S0", spec, free).real().numpy()
    assert abs(H[0, 0] - 0.75 * omega) < 1e-7
    assert abs(H[1, 1] - 1.75 * omega) < 1e-7
    assert abs(abs(H[0, 1]) - 0.5 * omega * math.sqrt(1.5)) < 1e-7
    # kinetic energy is tridiagonal in this basis
    assert abs(H[0, 2]) < 1e-7
    assert abs(H[0, 3]) < 1e-7
    assert abs(H[1, 3]) < 1e-7


def test_spin_splitting(computed):
    diff = computed["3S1"] - computed["1S0"]
    assert abs(diff[0, 0] - 0.1515) < 2e-3
    assert abs(diff[0, 1] - 0.1619) < 2e-3


def test_literal_2s_splitting(computed):
    literal = literal_hamiltonian("3S1").real() - literal_hamiltonian("1S0").real()
    assert abs(literal[1, 1] - 0.1754) < 1e-4
    diff = computed["3S1"] - computed["1S0"]
    assert abs(diff[1, 1] - float(literal[1, 1])) < 2e-3
    # the printed 1S0 entry would put it near 0.204
    verbatim = literal_hamiltonian("3S1").real() - literal_hamiltonian("1S0", verbatim=True).real()
    assert abs(diff[1, 1] - float(verbatim[1, 1])) > 0.02


def test_close_to_literal(computed):
    for channel, H in computed.items():
        literal = literal_hamiltonian(channel).real().numpy()
        # off-diagonal signs depend on the basis phase convention
        diff = np.abs(np.abs(H) - np.abs(literal))
        if channel == "1P1":
            # the literal corner repeats the 3S1 entry
            assert H[3, 3] - literal[3, 3] > 1.0
            diff[3, 3] = 0.0
        assert diff.max() < 0.15, channel


def test_l_mismatch(params):
    with pytest.raises(ValueError):
        ho_matrix("1P1", BasisSpec(1.2, params.mu, l=0), params)


class TestE1:
    def test_closed_form(self, params):
        spec_S = BasisSpec(1.2, params.mu, l=0)
        spec_P = BasisSpec(1.2, params.mu, l=1)
        M = e1_matrix(spec_S, spec_P)
        assert M.units == "fm"
        assert np.abs(M.real().numpy() - e1_closed_form(spec_S)).max() < 1e-6

    def test_literal(self, params):
        spec = BasisSpec(1.2, params.mu, l=0)
        closed = e1_closed_form(spec)
        assert abs(spec.b_len - 0.47149) < 1e-4
        assert np.abs(closed - literal_e1().real().numpy()).max() < 1e-3
        # the printed (2, 2) entry is far off the closed form
        assert abs(literal_e1(verbatim=True).real()[2, 2] - closed[2, 2]) > 1.0

    def test_selection_rule(self, params):
        closed = e1_closed_form(BasisSpec(1.2, params.mu, l=0))
        for n in range(4):
            for m in range(4):
                if m not in (n, n + 1):
                    assert closed[n, m] == 0.0

    def test_mismatched_bases(self, params):
        with pytest.raises(ValueError):
            e1_matrix(BasisSpec(1.2, params.mu, l=0), BasisSpec(1.3, params.mu, l=1))
        with pytest.raises(ValueError):
            e1_matrix(BasisSpec(1.2, params.mu, l=1), BasisSpec(1.2, params.mu, l=1))


class TestMatrix:
    def test_json(self, tmp_path):
        M = literal_hamiltonian("3S1")
        M2 = HamiltonianMatrix.load(M.save(str(tmp_path / "m.json")))
        assert torch.equal(M.entries, M2.entries)
        assert M2.source == "literal"
        assert M2.channel == "3S1"
        assert M2.sha1() == M.sha1()

    def test_invalid(self):
        with pytest.raises(ValueError):
            HamiltonianMatrix(torch.zeros(2, 3))
        with pytest.raises(ValueError):
            HamiltonianMatrix(torch.tensor([[float("nan")]]))
        with pytest.raises(ValueError):
            HamiltonianMatrix.from_dict({"dim": 2, "entries_row_major": [[1, 0]]})
        with pytest.raises(ValueError):
            HamiltonianMatrix(torch.eye(2), units="GeV")

    def test_literal_symmetric(self, channel):
        assert literal_hamiltonian(channel).is_symmetric(atol=0.0)
        assert literal_hamiltonian(channel).n_qubits == 2
