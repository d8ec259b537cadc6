import json
import logging

import pytest

from qvqite.transitions import (
    E1_TRANSITIONS,
    M1_TRANSITIONS,
    AmplitudeResult,
    StateRef,
    ThetaSource,
    TransitionSpec,
    check_method,
    eigvec_thetas,
    spectrum_filename,
)


class TestStateRef:
    def test_parse(self):
        ref = StateRef.parse("2_3S1")
        assert ref.channel == "3S1"
        assert ref.index == 2
        assert ref.name == "2_3S1"
        assert ref.l == 0
        assert StateRef.parse("1_1P1").l == 1

    @pytest.mark.parametrize("text", ["3S1", "x_3S1", "1_3D1", "0_1S0"])
    def test_parse_invalid(self, text):
        with pytest.raises(ValueError):
            StateRef.parse(text)

    def test_theta_length(self):
        with pytest.raises(ValueError):
            StateRef("1S0", 1, theta=(0.1, 0.2))


class TestTransitionSpec:
    def test_tables(self):
        assert len(M1_TRANSITIONS) == 6
        assert len(E1_TRANSITIONS) == 5
        assert M1_TRANSITIONS[0].name == "1_3S1->1_1S0"
        assert E1_TRANSITIONS[2].name == "2_1S0->1_1P1"
        for spec in E1_TRANSITIONS:
            assert spec.p_wave.channel == "1P1"
            assert spec.s_wave.channel == "1S0"
            assert spec.operator is not None

    def test_selection(self):
        with pytest.raises(ValueError):
            TransitionSpec(StateRef("1P1", 1), StateRef("1S0", 1), kind="M1")
        with pytest.raises(ValueError):
            TransitionSpec(StateRef("3S1", 1), StateRef("1S0", 1), kind="E1")
        with pytest.raises(ValueError):
            TransitionSpec(StateRef("3S1", 1), StateRef("1S0", 1), kind="E2")

    def test_dict(self):
        spec = TransitionSpec.from_dict({"kind": "e1", "initial": "1_1P1", "final": "1_1S0"})
        assert spec.kind == "E1"
        again = TransitionSpec.from_dict(json.loads(json.dumps(spec.as_dict())))
        assert again == spec


def test_check_method():
    check_method("M1", "direct")
    check_method("m1", "swap")
    check_method("E1", "hadamard")
    with pytest.raises(ValueError):
        check_method("E1", "swap")
    with pytest.raises(ValueError):
        check_method("M1", "hadamard")


def test_result_row():
    result = AmplitudeResult("1_3S1->1_1S0", "direct", "sampled", 0.99375, 0.0002, 20000, 10)
    assert result.as_row() == ("1_3S1->1_1S0", "direct", "sampled", 20000, 10, "0.99375", "0.0002")
    with pytest.raises(ValueError):
        AmplitudeResult("x", "direct", "exact", 0.5, stderr=-1.0)


class TestThetaSource:
    def test_eigvec(self):
        source = ThetaSource()
        thetas = source.thetas("3S1")
        assert len(thetas) == 4
        assert thetas == eigvec_thetas("3S1")
        resolved = source.resolve(M1_TRANSITIONS[0])
        assert resolved.initial.theta == thetas[0]
        assert resolved.theta_source == "eigvec"
        with pytest.raises(ValueError):
            source.theta("3S1", 5)

    def test_directory(self, tmp_path, caplog):
        levels = [{"E": 3.5, "theta": [0.1, 0.2, 0.3]}, {"E": 0.4, "theta": [0.4, 0.5, 0.6]}]
        (tmp_path / spectrum_filename("1S0")).write_text(json.dumps({"levels": levels}))
        manifest = {"code_versions": {"torch": "0.0.1"}, "code_commits": {}}
        (tmp_path / "manifest.json").write_text(json.dumps(manifest))
        source = ThetaSource(str(tmp_path))
        with caplog.at_level(logging.ERROR):
            assert source.theta("1S0", 1) == (0.4, 0.5, 0.6)
        assert "torch" in caplog.text
        assert source.theta("1S0", 2) == (0.1, 0.2, 0.3)
        with pytest.raises(ValueError):
            source.thetas("3S1")

    def test_bad_source(self, tmp_path):
        with pytest.raises(ValueError):
            ThetaSource(str(tmp_path / "missing"))
