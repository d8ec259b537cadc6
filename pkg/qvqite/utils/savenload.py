"""
Reading and writing result files: YAML/JSON documents, CSV tables and digests.

Every writer goes through ``atomic_write``, so an interrupted run never leaves
a half-written file under its final name.
"""

from typing import Dict, List, Optional, Sequence, Tuple, Union
import contextlib
import csv
import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

import yaml

PathLike = Union[Path, str]


@contextlib.contextmanager
def atomic_write(filename: Union[PathLike, List[PathLike]], binary: bool = False):
    """Yield temporary file(s) next to ``filename`` and move them into place on success.

    On any exception the temporaries are removed and the targets are left untouched.
    """
    many = isinstance(filename, list)
    targets = [Path(f) for f in (filename if many else [filename])]
    text_kwargs = {} if binary else {"newline": "", "encoding": "utf-8"}
    handles = []
    try:
        for target in targets:
            handles.append(
                tempfile.NamedTemporaryFile(
                    mode="wb" if binary else "w",
                    dir=target.parent,
                    prefix=f".tmp-{target.name}-",
                    delete=False,
                    **text_kwargs,
                )
            )
        yield handles if many else handles[0]
    except BaseException:
        for h in handles:
            h.close()
            Path(h.name).unlink(missing_ok=True)
        raise
    for h, target in zip(handles, targets):
        h.close()
        os.replace(h.name, target)


def _ensure_parent(filename: PathLike):
    parent = Path(filename).resolve().parent
    if not parent.is_dir():
        logging.debug(f"creating {parent}")
        parent.mkdir(parents=True, exist_ok=True)


def format_float(x) -> str:
    """Locale independent, 9 significant digits."""
    return format(float(x), ".9g")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def save_csv(filename: str, header: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Header line, then one line per row; floats as 9 significant digits."""
    _ensure_parent(filename)
    with atomic_write(filename) as fout:
        writer = csv.writer(fout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"CSV row {row} has {len(row)} fields but the header has {len(header)}")
            writer.writerow([_csv_cell(v) for v in row])
    return filename


def load_csv(filename: str) -> Tuple[List[str], List[List[str]]]:
    with open(filename, newline="", encoding="utf-8") as fin:
        reader = csv.reader(fin)
        header = next(reader)
        return header, list(reader)


def _suffixes(supported_formats: Dict[str, Union[str, Sequence[str]]], format: str) -> List[str]:
    suffix = supported_formats[format]
    return [suffix] if isinstance(suffix, str) else list(suffix)


def match_suffix(supported_formats: dict, filename: str) -> str:
    """Format whose suffix ``filename`` carries; the first supported format otherwise."""
    lowered = filename.lower()
    for format in supported_formats:
        if any(lowered.endswith(f".{s}") for s in _suffixes(supported_formats, format)):
            return format
    return next(iter(supported_formats))


def adjust_format_name(supported_formats: dict, filename: str, enforced_format: Optional[str] = None):
    """Returns ``(format, filename)``, appending the format's suffix if it is missing."""
    format = enforced_format or match_suffix(supported_formats, filename)
    if format not in supported_formats:
        raise NotImplementedError(f"Format `{format}` not supported: try one of {list(supported_formats)}")
    suffixes = _suffixes(supported_formats, format)
    if not any(filename.endswith(f".{s}") for s in suffixes):
        filename = f"{filename}.{suffixes[0]}"
    return format, filename


def save_file(item, supported_formats: dict, filename: str, enforced_format: Optional[str] = None) -> str:
    """Write ``item`` as YAML or JSON; returns the final file name."""
    _ensure_parent(filename)
    format, filename = adjust_format_name(supported_formats, filename, enforced_format)
    with atomic_write(filename) as fout:
        if format == "json":
            json.dump(item, fout, indent=1)
            fout.write("\n")
        else:
            yaml.dump(item, fout, sort_keys=False)
    return filename


def load_file(supported_formats: dict, filename: str, enforced_format: Optional[str] = None):
    """Read a YAML or JSON file.

    Malformed JSON raises ``json.JSONDecodeError`` (a ``ValueError``) with the line and column.
    """
    format = enforced_format or match_suffix(supported_formats, filename)
    if not os.path.isfile(filename):
        raise OSError(f"file {filename} at {Path(filename).resolve()} is not found")
    with open(filename, encoding="utf-8") as fin:
        if format == "json":
            return json.load(fin)
        if format == "yaml":
            return yaml.safe_load(fin)
    raise NotImplementedError(f"Format `{format}` not supported: try one of {list(supported_formats)}")


def sha1_file(filename: str) -> str:
    h = hashlib.sha1()
    with open(filename, "rb") as fin:
        for chunk in iter(lambda: fin.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
