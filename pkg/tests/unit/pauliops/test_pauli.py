import math

import pytest
import torch

from qvqite.pauliops import (
    PauliString,
    PauliSum,
    all_strings,
    decompose,
    expval_exact,
    format_table,
    matrix_element,
    reconstruct,
)
from qvqite.quarkmodel import literal_e1, literal_hamiltonian


def _basis_state(index: int, n: int = 2) -> torch.Tensor:
    psi = torch.zeros(2**n, dtype=torch.complex128)
    psi[index] = 1.0
    return psi.reshape((2,) * n)


class TestString:
    def test_parse(self):
        assert PauliString("zx").ops == "ZX"
        assert PauliString("ZI").support == (0,)
        assert PauliString("II").is_identity()
        assert PauliString.single(3, 1, "Y").ops == "IYI"
        assert PauliString("IZIX").describe() == "Z1X3"
        assert PauliString("II").describe() == "I"
        with pytest.raises(ValueError):
            PauliString("ZQ")
        with pytest.raises(ValueError):
            PauliString("")

    def test_big_endian(self):
        # Z on qubit 0 flips the sign of the upper half of the index range
        assert torch.equal(
            PauliString("ZI").matrix().diagonal().real,
            torch.tensor([1.0, 1.0, -1.0, -1.0], dtype=torch.float64),
        )
        # X on qubit 1 swaps neighbouring indices
        assert PauliString("IX").matrix()[0, 1] == 1
        assert PauliString("IX").matrix()[0, 2] == 0

    @pytest.mark.parametrize("ops", ["XY", "ZZ", "YI", "IY", "XZY"])
    def test_apply_matches_matrix(self, ops):
        s = PauliString(ops)
        n = s.n_qubits
        g = torch.Generator().manual_seed(0)
        psi = torch.randn(2**n, dtype=torch.complex128, generator=g)
        dense = s.matrix() @ psi
        assert torch.allclose(s.apply(psi.reshape((2,) * n)).reshape(-1), dense)

    def test_apply_shape_mismatch(self):
        with pytest.raises(ValueError):
            PauliString("ZZ").apply(_basis_state(0, 3))


def test_all_strings():
    strings = all_strings(2)
    assert len(strings) == 16
    assert strings[0].ops == "II"
    assert strings[1].ops == "IX"
    assert strings[-1].ops == "ZZ"


class TestDecompose:
    def test_hamiltonian_coefficients(self, H_1S0):
        expected = {
            "II": 4.273,
            "ZI": -2.119,
            "IZ": -1.082,
            "ZZ": -0.129,
            "XI": -0.817,
            "IX": -0.515,
            "ZX": -0.358,
            "XZ": 0.048,
            "XX": -0.562,
            "YY": -0.002,
        }
        # the printed 1S0 (1, 1) entry would miss II, ZI and IZ by about 0.007
        for ops, value in expected.items():
            c = H_1S0.coefficient(ops)
            assert abs(c.imag) < 1e-12, ops
            assert abs(c.real - value) < 1e-3, (ops, c)

    def test_real_symmetric_has_no_odd_y(self, H_1S0):
        for c, s in H_1S0:
            assert abs(c.imag) < 1e-12
            assert s.ops.count("Y") % 2 == 0, s

    def test_e1_coefficients(self):
        S = decompose(literal_e1())
        assert abs(S.coefficient("XY") - 0.1667j) < 2e-4
        assert abs(S.coefficient("YX") + 0.1667j) < 2e-4
        assert abs(S.coefficient("IX") + 0.3220) < 2e-4
        assert abs(S.coefficient("ZX") - 0.0863) < 2e-4
        assert not S.is_hermitian()

    def test_identity(self):
        S = decompose(torch.eye(4))
        assert S.as_map() == {"II": 1 + 0j}

    def test_reconstruct(self, channel):
        M = literal_hamiltonian(channel).entries
        back = reconstruct(decompose(M))
        assert (back - M).abs().max() < 1e-12

    def test_reconstruct_single(self):
        M = reconstruct(PauliSum([(1.0, "ZI")]))
        assert torch.equal(M, torch.diag(torch.tensor([1, 1, -1, -1], dtype=torch.complex128)))

    def test_linear(self):
        A = literal_hamiltonian("1S0").entries
        B = literal_hamiltonian("3S1").entries
        left = decompose(2.0 * A + B).as_map()
        right = (2.0 * decompose(A) + decompose(B)).as_map()
        assert left.keys() == right.keys()
        for k in left:
            assert abs(left[k] - right[k]) < 1e-12

    def test_not_power_of_two(self):
        with pytest.raises(ValueError):
            decompose(torch.eye(3))
        with pytest.raises(ValueError):
            decompose(torch.zeros(2, 4))


class TestSum:
    def test_merge_and_prune(self):
        S = PauliSum([(1.0, "ZI"), (0.5, "ZI"), (1e-14, "XX"), (2.0, "II")])
        assert S.as_map() == {"ZI": 1.5 + 0j, "II": 2.0 + 0j}
        assert len(S) == 2
        assert S.coefficient("YY") == 0j

    def test_register_mismatch(self):
        with pytest.raises(ValueError):
            PauliSum([(1.0, "Z"), (1.0, "ZZ")])
        with pytest.raises(ValueError):
            PauliSum([])
        with pytest.raises(ValueError):
            PauliSum([(1.0, "Z")]) + PauliSum([(1.0, "ZZ")])

    def test_json(self, tmp_path, H_1S0):
        S = PauliSum.load(H_1S0.save(str(tmp_path / "h.json")))
        assert S.as_map() == H_1S0.as_map()
        with pytest.raises(ValueError):
            PauliSum.from_dict({"n": 2, "terms": [{"string": "ZZ"}]})

    def test_format_table(self, H_1S0):
        table = format_table(H_1S0, digits=3)
        lines = table.splitlines()
        assert len(lines) == len(H_1S0) + 1
        assert "Z0X1" in table
        assert "-2.126" in table


class TestExpectation:
    def test_basis_state(self, H_1S0):
        assert abs(expval_exact(H_1S0, _basis_state(0)) - 0.9431) < 1e-10

    def test_matches_dense(self, H_3S1):
        g = torch.Generator().manual_seed(1)
        psi = torch.randn(4, dtype=torch.complex128, generator=g)
        psi = psi / torch.linalg.norm(psi)
        dense = torch.vdot(psi, reconstruct(H_3S1) @ psi)
        assert abs(expval_exact(H_3S1, psi) - complex(dense)) < 1e-12

    def test_matrix_element(self):
        S = decompose(literal_e1())
        # entry (0, 1) is -0.4715, entry (1, 0) vanishes
        assert abs(matrix_element(S, _basis_state(0), _basis_state(1)) + 0.4715) < 1e-12
        assert abs(matrix_element(S, _basis_state(1), _basis_state(0))) < 1e-12

    def test_size_mismatch(self, H_1S0):
        with pytest.raises(ValueError):
            expval_exact(H_1S0, torch.ones(8) / math.sqrt(8))
