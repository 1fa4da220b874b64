"""Exception types raised by kltsurf services.

Verification outcomes are never exceptions: a failed lemma assertion is data in a
``LemmaReport``. These classes cover precondition violations only.
"""

from __future__ import annotations


class KltError(ValueError):
    """Base class for precondition violations."""


class GraphError(KltError):
    """Structural problem with a dual graph (disconnected, not a chain, singular, ...)."""


class ParameterError(KltError):
    """Numeric parameter outside its admissible range."""


class GraphFormatError(KltError):
    """Graph file could not be parsed. Carries the file path and 1-based line number."""

    def __init__(
        self, message: str, *, path: str | None = None, line: int | None = None
    ) -> None:
        self.message = message
        self.path = path
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        location = self.path or "<input>"
        if self.line is not None:
            location = f"{location}:{self.line}"
        return f"{location}: {self.message}"


__all__ = ["KltError", "GraphError", "ParameterError", "GraphFormatError"]
