import logging
import sys
from typing import Optional

_FORMAT = "%(levelname)s %(message)s"


def set_up_script_logger(logfile: Optional[str], verbose: str = "INFO") -> logging.Logger:
    """Root logger for a console script: stderr at ``verbose``, plus ``logfile`` if given.

    Standard output is left to the commands themselves (tables, results).
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    level = getattr(logging, str(verbose).upper(), None)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level `{verbose}`")
    root_logger.handlers = [logging.StreamHandler(sys.stderr)]
    root_logger.handlers[0].setLevel(level)
    root_logger.handlers[0].setFormatter(logging.Formatter(_FORMAT))
    if logfile is not None:
        root_logger.addHandler(logging.FileHandler(logfile, mode="w"))
        root_logger.handlers[-1].setLevel(level)
        root_logger.handlers[-1].setFormatter(logging.Formatter("%(asctime)s " + _FORMAT))
    return root_logger
