"""Options of one command run.

A ``Config`` layers the command's ``default_config``, an optional YAML/JSON
file and the flags given explicitly on the command line. Every key read
through it is remembered, so keys nobody asked for can be reported as typos.

    config = Config(dict(shots=1000, seed=7))
    config.mode = "sampled"
    config.set_type("shots", int)     # or config["_shots_type"] = int
    config.update({"shots": 2.0e4})   # stored as 20000
"""

from typing import Any, Callable, Dict, Iterator, List, Optional, Set

from collections.abc import MutableMapping
from copy import deepcopy

from .savenload import save_file, load_file


_GLOBAL_ALL_ASKED_FOR_KEYS: Set[str] = set()

_SUPPORTED_FORMATS = {"yaml": ("yml", "yaml"), "json": "json"}

_INCLUDE_KEY = "include_file_as_baseline_config"


def _typehint_key(key: str) -> Optional[str]:
    if key.startswith("_") and key.endswith("_type"):
        return key[1:-5]
    return None


def _read_mapping(filename: str, format: Optional[str]) -> dict:
    loaded = load_file(
        supported_formats=_SUPPORTED_FORMATS,
        filename=filename,
        enforced_format=format,
    )
    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        raise ValueError(f"Config file {filename} must contain a mapping, got {type(loaded).__name__}")
    return loaded


class Config(MutableMapping):
    _items: Dict[str, Any]
    _item_types: Dict[str, Callable]

    def __init__(self, config: Optional[dict] = None):
        object.__setattr__(self, "_items", {})
        object.__setattr__(self, "_item_types", {})
        if config is not None:
            self.update(config)

    def __repr__(self):
        return f"Config({self._items!r})"

    __str__ = __repr__

    # mapping protocol; only __getitem__ marks a key as used

    def __getitem__(self, key: str):
        _GLOBAL_ALL_ASKED_FOR_KEYS.add(key)
        return self._items[key]

    def __setitem__(self, key: str, val):
        target = _typehint_key(key)
        if target is not None:
            self._item_types[target] = val
            return
        cast = self._item_types.get(key, None)
        if cast is not None and val is not None:
            try:
                val = cast(val)
            except (TypeError, ValueError):
                raise TypeError(
                    f"Wrong Type: `{key}` should be {getattr(cast, '__name__', cast)}, got {val!r}"
                )
        self._items[key] = deepcopy(val)

    def __delitem__(self, key: str):
        del self._items[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, key) -> bool:
        return key in self._items

    def items(self):
        return self._items.items()

    __setattr__ = __setitem__

    def __getattr__(self, key: str):
        if key.startswith("_"):
            raise AttributeError(key)
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)

    def update(self, dictionary: dict):
        """Set several keys; typehints (``_name_type`` keys) go first so they apply to this update."""
        hints = {k: v for k, v in dictionary.items() if _typehint_key(k) is not None}
        for k, v in hints.items():
            self[k] = v
        for k, v in dictionary.items():
            if k not in hints:
                self[k] = v

    def get_type(self, key: str) -> Optional[Callable]:
        return self._item_types.get(key, None)

    def set_type(self, key: str, typehint: Callable):
        self._item_types[key] = typehint

    @staticmethod
    def as_dict(obj) -> dict:
        """Plain copy of ``obj`` without marking its keys as used."""
        if isinstance(obj, Config):
            return dict(obj._items)
        if isinstance(obj, dict):
            return dict(obj)
        raise TypeError(f"Cannot convert {type(obj).__name__} to a config dict")

    def _unused_keys(self) -> List[str]:
        return [k for k in self._items if k not in _GLOBAL_ALL_ASKED_FOR_KEYS]

    def save(self, filename: str, format: Optional[str] = None) -> str:
        return save_file(
            item=dict(self._items),
            supported_formats=_SUPPORTED_FORMATS,
            filename=filename,
            enforced_format=format,
        )

    @staticmethod
    def from_dict(dictionary: dict, defaults: dict = {}) -> "Config":
        config = Config(defaults)
        config.update(dictionary)
        return config

    @staticmethod
    def from_file(filename: str, format: Optional[str] = None, defaults: dict = {}) -> "Config":
        """Load a config file on top of ``defaults``.

        A file may name one baseline file whose keys it overrides:

            include_file_as_baseline_config: configs/minimal.yaml
            mode: sampled
        """
        dictionary = _read_mapping(filename, format)
        baseline_file = dictionary.pop(_INCLUDE_KEY, None)
        if baseline_file is not None:
            baseline = _read_mapping(baseline_file, format)
            if _INCLUDE_KEY in baseline:
                raise NotImplementedError(
                    f"{baseline_file} includes another baseline; only one level of `{_INCLUDE_KEY}` is allowed"
                )
            dictionary = {**baseline, **dictionary}
        return Config.from_dict(dictionary, defaults)

    load = from_file
