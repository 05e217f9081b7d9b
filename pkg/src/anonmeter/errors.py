"""Exception types shared across the package."""

from __future__ import annotations


class AnonmeterError(Exception):
    """Base class for all package-specific errors."""


class ParseError(AnonmeterError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class IncompatibleGraphsError(AnonmeterError):
    """Two graphs that must share a vertex set do not."""


class UndefinedMetricError(AnonmeterError):
    """The metric is mathematically undefined on this input."""


class BudgetError(AnonmeterError):
    """Requested edge-perturbation budget cannot be satisfied."""


class ConvergenceError(AnonmeterError):
    """Iterative solver did not converge. Carries the last iterate."""

    def __init__(self, message: str, last_estimate=None):
        self.last_estimate = last_estimate
        super().__init__(message)


class ConfigError(AnonmeterError):
    """Invalid scenario configuration."""
