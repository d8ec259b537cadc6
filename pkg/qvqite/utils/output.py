import datetime
import logging
import sys
from dataclasses import dataclass, field, asdict
from os import listdir, makedirs
from os.path import isdir, isfile, relpath
from typing import Dict, List, Optional

from .savenload import save_file, sha1_file
from .versions import get_current_code_versions, CODE_VERSIONS_KEY, CODE_COMMITS_KEY

MANIFEST_NAME = "manifest.json"


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    """Provenance record written next to the outputs of every command."""

    command_line: List[str]
    config: dict
    seed: Optional[int] = None
    code_versions: Dict[str, str] = field(default_factory=dict)
    code_commits: Dict[str, str] = field(default_factory=dict)
    inputs: Dict[str, str] = field(default_factory=dict)
    start_time: str = field(default_factory=_utc_now)
    end_time: Optional[str] = None
    outputs: List[str] = field(default_factory=list)
    exit_code: Optional[int] = None

    @classmethod
    def start(cls, config: dict, seed: Optional[int] = None, argv=None):
        code_versions, code_commits = get_current_code_versions()
        return cls(
            command_line=list(sys.argv if argv is None else argv),
            config=dict(config),
            seed=seed,
            code_versions=code_versions,
            code_commits=code_commits,
        )

    def add_input(self, name: str, path: Optional[str] = None, digest: str = None):
        """Record the sha1 of an input file (or a precomputed digest)."""
        if digest is None:
            digest = sha1_file(path)
        self.inputs[name] = digest

    def as_dict(self) -> dict:
        d = asdict(self)
        # keep key names shared with ``check_code_version``
        d[CODE_VERSIONS_KEY] = d.pop("code_versions")
        d[CODE_COMMITS_KEY] = d.pop("code_commits")
        return d


class Output:
    """Manage the output directory of a command run.

    Args:
        workdir: directory receiving every output file
        append: if True, an existing directory and its files may be reused
    """

    def __init__(self, workdir: str, append: bool = False):
        self.workdir = workdir
        self.append = append
        self.files: List[str] = []

        if isdir(workdir) and len(listdir(workdir)) > 0 and not append:
            raise FileExistsError(
                f"Output directory {workdir} already exists and is not empty; "
                "use --append or a different --out"
            )
        makedirs(self.workdir, exist_ok=True)
        logging.debug(f"* Initialize Output at {self.workdir}")

    def generate_file(self, file_name: str) -> str:
        """
        only works with relative path. returns the full path and records it
        """
        if file_name.startswith("/"):
            raise ValueError("filename should be a relative path file name")
        full_name = f"{self.workdir}/{file_name}"

        if isfile(full_name) and not self.append and full_name not in self.files:
            raise FileExistsError(
                f"Tried to create file `{full_name}` but it already exists and append is disabled"
            )

        logging.debug(f"  ...generate file name {full_name}")
        if full_name not in self.files:
            self.files.append(full_name)
        return full_name

    def write_manifest(self, manifest: RunManifest, exit_code: int = 0) -> str:
        manifest.end_time = _utc_now()
        manifest.exit_code = exit_code
        manifest.outputs = [relpath(f, self.workdir) for f in self.files]
        return save_file(
            item=manifest.as_dict(),
            supported_formats={"json": "json"},
            filename=f"{self.workdir}/{MANIFEST_NAME}",
        )
