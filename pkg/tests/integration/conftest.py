import json
import subprocess
import sys
from pathlib import Path
from typing import Sequence

import pytest


def _check_and_print(retcode, expected: int = 0):
    __tracebackhide__ = True
    if retcode.returncode != expected:
        if retcode.stdout is not None and len(retcode.stdout) > 0:
            print(retcode.stdout.decode("utf-8"))
        if retcode.stderr is not None and len(retcode.stderr) > 0:
            print(retcode.stderr.decode("utf-8"), file=sys.stderr)
        pytest.fail(f"exit code {retcode.returncode}, expected {expected}")


def read_manifest(out: Path) -> dict:
    with open(out / "manifest.json") as f:
        return json.load(f)


@pytest.fixture()
def cli(tmp_path):
    """Run a console script in a scratch directory and check its exit code."""

    def run(command: str, args: Sequence[str], expected: int = 0):
        retcode = subprocess.run(
            [command] + [str(a) for a in args],
            cwd=tmp_path,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        _check_and_print(retcode, expected)
        return retcode

    return run
