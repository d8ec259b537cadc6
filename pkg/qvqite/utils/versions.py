from typing import Optional, Tuple

import logging
import subprocess
from importlib import import_module
from pathlib import Path

import numpy
import scipy
import torch
import qvqite

_DEFAULT_VERSION_CODES = [qvqite, numpy, scipy, torch]
_DEFAULT_COMMIT_CODES = ["qvqite"]

CODE_VERSIONS_KEY = "code_versions"
CODE_COMMITS_KEY = "code_commits"


def get_commit(module: str) -> Optional[str]:
    """Hash of the git checkout ``module`` is imported from, if any."""
    package = Path(import_module(module).__file__).parent
    if package.is_file():
        # zipped egg
        return None
    try:
        retcode = subprocess.run(
            ["git", "rev-parse", "HEAD"],
            cwd=package.parent,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
    except OSError:
        return None
    if retcode.returncode != 0:
        return None
    return retcode.stdout.decode().strip() or None


def get_current_code_versions() -> Tuple[dict, dict]:
    code_versions = {code.__name__: code.__version__ for code in _DEFAULT_VERSION_CODES}
    code_commits = {code: get_commit(code) for code in _DEFAULT_COMMIT_CODES}
    code_commits = {k: v for k, v in code_commits.items() if v is not None}
    return code_versions, code_commits


def check_code_version(record: dict) -> None:
    """Log an error for every library version or commit differing from ``record``.

    ``record`` is a run manifest (or anything with the same two keys).
    """
    current = dict(zip((CODE_VERSIONS_KEY, CODE_COMMITS_KEY), get_current_code_versions()))
    for key, what in ((CODE_VERSIONS_KEY, "version"), (CODE_COMMITS_KEY, "git commit")):
        for code, then in record.get(key, {}).items():
            # codes recorded then but not tracked now are skipped
            now = current[key].get(code, then)
            if now != then:
                logging.error(
                    f"Reusing results made with {code} {what} {then}; the current one is {now}. "
                    "Outputs may be inconsistent."
                )
