import warnings

import torch

from .config import Config

_DTYPES = {"float32": torch.float32, "float64": torch.float64}


# for multiprocessing, we need to keep track of our latest global options so
# that we can reload/reset them in worker processes.
_latest_global_config = {}


def _get_latest_global_options() -> dict:
    """Get the config used latest to ``_set_global_options``.

    This is useful for getting worker processes into the same state as the parent.
    """
    global _latest_global_config
    return _latest_global_config


def _set_global_options(config, warn_on_override: bool = False) -> None:
    """Configure torch from ``config``: default dtype and intra-op threads.

    Args:
        warn_on_override: if True, warn if new options are inconsistant with previously set ones.
    """
    global _latest_global_config
    config = Config.as_dict(config)
    keep = ("default_dtype", "torch_threads")
    _latest_global_config.update({k: config[k] for k in keep if k in config})

    if "default_dtype" in config:
        old_dtype = torch.get_default_dtype()
        name = config["default_dtype"]
        if name not in _DTYPES:
            raise ValueError(f"default_dtype must be one of {list(_DTYPES)}, got `{name}`")
        new_dtype = _DTYPES[name]
        if warn_on_override and old_dtype != new_dtype:
            warnings.warn(
                f"Setting the GLOBAL value for torch.set_default_dtype to `{name}` which is different than the previous value of `{old_dtype}`"
            )
        torch.set_default_dtype(new_dtype)
    if config.get("torch_threads", None) is not None:
        torch.set_num_threads(int(config["torch_threads"]))
