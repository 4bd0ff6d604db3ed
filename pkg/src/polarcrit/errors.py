"""Shared error types for solver-level failures."""

from __future__ import annotations

__all__ = [
    "NotFiniteError",
    "NotRadicalError",
    "NotSeparatingError",
    "DegenerateInputError",
    "EmptyVarietyError",
    "SolveFailError",
    "InstabilityError",
]


class NotFiniteError(ValueError):
    """The solution set is not finite where a finite one is required."""


class NotRadicalError(ValueError):
    """No candidate linear form has a squarefree minimal polynomial of full
    degree; in dimension zero this means the ideal is not radical."""


class NotSeparatingError(ValueError):
    """The supplied linear form takes equal values at distinct points."""


class DegenerateInputError(ValueError):
    """Input indices produce a degenerate construction (e.g. a minor size
    exceeding the matrix width)."""


class EmptyVarietyError(ValueError):
    """The system has no solutions where points are required."""


class SolveFailError(RuntimeError):
    """A probabilistic routine failed even after reseeding."""


class InstabilityError(RuntimeError):
    """Two independent random runs disagreed; the result is unstable."""
