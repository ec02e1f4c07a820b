"""Shared exception types.

Everything here derives from a built-in exception so that callers who do not
care about the fine distinctions can still catch ``ValueError`` /
``RuntimeError`` as usual.
"""
from __future__ import annotations

__all__ = [
    "DivergenceError",
    "DomainTooSmallError",
    "InputFormatError",
    "ScaleRangeError",
]


class DivergenceError(RuntimeError):
    """An iterative fixed-point computation failed to stabilize.

    Raised by the Kleene-star partial sums and the Bellman solvers when the
    iteration is still changing after the iteration budget plus one extra
    verification pass (the tropical signature of a positive/negative cycle).
    """


class DomainTooSmallError(ValueError):
    """A grid computation would be dominated by boundary truncation.

    Raised when the effective support of a propagation kernel exceeds the
    extent of the grid it is applied on.
    """


class ScaleRangeError(ValueError):
    """A requested scale probes a region carrying no data (e.g. zero mass)."""


class InputFormatError(ValueError):
    """A text input (edge list, CSV grid, JSON polynomial, ...) is malformed.

    Carries the offending path and 1-based line number when known so that
    command-line tools can point at the exact spot.
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        if where:
            message = f"{where} {message}"
        super().__init__(message)
