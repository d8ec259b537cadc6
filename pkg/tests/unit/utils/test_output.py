"""
Output and manifest tests
"""

import json
from os.path import isdir, isfile

import pytest

from qvqite.utils import Output, RunManifest, load_csv, save_csv, save_file, sha1_file


class TestInit:
    def test_empty_init(self, tmp_path):
        output = Output(workdir=str(tmp_path / "run"))
        assert isdir(output.workdir)

    def test_existing_nonempty(self, tmp_path):
        (tmp_path / "something.csv").write_text("x\n")
        with pytest.raises(FileExistsError):
            Output(workdir=str(tmp_path))
        output = Output(workdir=str(tmp_path), append=True)
        assert output.append


class TestFiles:
    def test_generate_file(self, tmp_path):
        output = Output(workdir=str(tmp_path / "run"))
        name = output.generate_file("a.csv")
        assert name.endswith("/a.csv")
        # asking twice in one run is fine
        assert output.generate_file("a.csv") == name
        assert output.files == [name]

    def test_absolute_path_rejected(self, tmp_path):
        output = Output(workdir=str(tmp_path / "run"))
        with pytest.raises(ValueError):
            output.generate_file("/tmp/a.csv")

    def test_no_clobber_without_append(self, tmp_path):
        workdir = tmp_path / "run"
        Output(workdir=str(workdir))
        (workdir / "a.csv").write_text("x\n")
        output = Output(workdir=str(workdir), append=True)
        output.append = False
        with pytest.raises(FileExistsError):
            output.generate_file("a.csv")


class TestManifest:
    def test_write(self, tmp_path):
        output = Output(workdir=str(tmp_path / "run"))
        data = output.generate_file("input.json")
        save_file({"x": 1}, {"json": "json"}, data)
        manifest = RunManifest.start(dict(seed=5), seed=5, argv=["qvqite-test", "--seed", "5"])
        manifest.add_input("input", path=data)
        path = output.write_manifest(manifest, exit_code=3)
        assert isfile(path)
        with open(path) as f:
            d = json.load(f)
        assert d["exit_code"] == 3
        assert d["seed"] == 5
        assert d["command_line"] == ["qvqite-test", "--seed", "5"]
        assert d["inputs"]["input"] == sha1_file(data)
        assert d["outputs"] == ["input.json"]
        assert "qvqite" in d["code_versions"]
        assert d["end_time"] is not None


class TestCsv:
    def test_float_format(self, tmp_path):
        f = save_csv(str(tmp_path / "x.csv"), ("a", "b", "c"), [(1, 0.1 + 0.2, True)])
        header, rows = load_csv(f)
        assert header == ["a", "b", "c"]
        assert rows == [["1", "0.3", "true"]]

    def test_row_length(self, tmp_path):
        with pytest.raises(ValueError):
            save_csv(str(tmp_path / "x.csv"), ("a", "b"), [(1,)])
        # nothing is left behind by the failed write
        assert not (tmp_path / "x.csv").exists()
        assert list(tmp_path.iterdir()) == []
