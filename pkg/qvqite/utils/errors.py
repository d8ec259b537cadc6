"""Numerical failure types.

Input validation raises builtin ``ValueError``/``TypeError``; the classes here
flag numerical breakdowns and carry enough state to diagnose them.
"""

from typing import Optional, Tuple


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach its tolerance for a matrix entry."""

    def __init__(self, entry: Tuple[int, int], estimate: float, message: str = ""):
        self.entry = tuple(entry)
        self.estimate = float(estimate)
        super().__init__(
            f"Quadrature for matrix entry {self.entry} did not converge "
            f"(error estimate {self.estimate:.3g}) {message}".rstrip()
        )


class BracketError(RuntimeError):
    """The energy bracket does not contain the requested bound state."""

    def __init__(self, level: int, message: str = ""):
        self.level = level
        super().__init__(f"Could not bracket level {level}: {message}".rstrip(": "))


class NormalizationError(RuntimeError):
    """A shooting solution could not be normalized on the grid."""

    def __init__(self, level: int, message: str = ""):
        self.level = level
        super().__init__(f"Level {level} is not normalizable: {message}".rstrip(": "))


class SolverBreakdown(RuntimeError):
    """Both the Cholesky and the pseudo-inverse solve of A x = C failed."""

    def __init__(self, A, C, message: str = ""):
        self.A = A
        self.C = C
        super().__init__(f"Linear solve of the McLachlan system failed. {message}")


class ConvergenceError(RuntimeError):
    """An iterative run stopped without meeting its criterion.

    ``partial`` holds whatever results were completed before the failure.
    """

    def __init__(self, message: str, partial: Optional[list] = None):
        self.partial = [] if partial is None else partial
        super().__init__(message)
