"""
Custom exceptions for lppgames.

Every error carries a message and, where one helps, a suggestion for the
caller. The CLI maps the classes below to process exit codes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any


class LPPGamesError(Exception):
    """Base exception for all lppgames errors."""

    exit_code: int = 1

    def __init__(self, message: str, suggestion: str | None = None):
        self.message = message
        self.suggestion = suggestion
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format error message with optional suggestion."""
        if self.suggestion:
            return f"{self.message}\n\nSuggestion: {self.suggestion}"
        return self.message


class StructuralError(LPPGamesError):
    """Inputs have the wrong shape (dimensions, ground sets, partitions)."""

    exit_code = 2

    def __init__(self, message: str, suggestion: str | None = None):
        super().__init__(message, suggestion or "Check the dimensions of the inputs")


class DomainError(LPPGamesError):
    """A value lies outside the domain an operation accepts."""

    exit_code = 3

    def __init__(self, field: str, value: Any, reason: str):
        self.field = field
        self.value = value
        message = f"Invalid value for '{field}': {value}\nReason: {reason}"
        super().__init__(message)


class PreconditionError(LPPGamesError):
    """An operation was called outside the situation it is defined for."""

    exit_code = 3

    def __init__(self, operation: str, reason: str, suggestion: str | None = None):
        self.operation = operation
        message = f"Precondition of '{operation}' not met: {reason}"
        super().__init__(message, suggestion)


class InfeasiblePhaseError(LPPGamesError):
    """A value-constrained solve could not reach the fixed objective value."""

    def __init__(self, fixed_value: Any):
        self.fixed_value = fixed_value
        message = f"Objective value {fixed_value} is not attainable on the feasible region"
        suggestion = "Pass the optimal value returned by solve() for the same program"
        super().__init__(message, suggestion)


class RuleViolationError(LPPGamesError):
    """An allocation rule hands out more of the common-pool resource than allowed."""

    exit_code = 3

    def __init__(self, rule: str, partition: str, reason: str):
        self.rule = rule
        self.partition = partition
        message = f"Allocation rule '{rule}' violated on partition {partition}: {reason}"
        suggestion = "Allocations must be nonnegative and sum to at most the stock r"
        super().__init__(message, suggestion)


class RefusalError(LPPGamesError):
    """The request is well-formed but deliberately refused."""

    exit_code = 3


class PartitionCapError(RefusalError):
    """Player count exceeds the partition enumeration cap."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        message = f"{n} players exceed the partition cap of {cap}"
        suggestion = "Raise limits.partition_cap in .lppgames.yml or pass --partition-cap"
        super().__init__(message, suggestion)


class RegimeRefusalError(RefusalError):
    """The instance is in a regime where the requested game is not defined."""

    def __init__(self, regime: str, partitions: list[str]):
        self.regime = regime
        self.partitions = partitions
        listed = ", ".join(partitions) if partitions else "none"
        message = (
            f"Characteristic game undefined in regime '{regime}'; "
            f"minimal over-demanding partitions: {listed}"
        )
        suggestion = "Use an optimistic, pessimistic or partition-function model instead"
        super().__init__(message, suggestion)


class GenerationError(RefusalError):
    """Random generation exhausted its attempt budget."""

    def __init__(self, regime: str, attempts: int):
        self.regime = regime
        self.attempts = attempts
        message = f"No instance in regime '{regime}' found after {attempts} attempts"
        suggestion = "Try another seed or different dimensions"
        super().__init__(message, suggestion)


class InstanceParseError(LPPGamesError):
    """Instance file could not be parsed."""

    exit_code = 2

    def __init__(self, source: Path | str, reason: str):
        self.source = source
        message = f"Failed to parse instance {source}: {reason}"
        suggestion = 'Expected {"A": [[...]], "B": [[...]], "p": [...], "c": ..., "r": ...}'
        super().__init__(message, suggestion)


class ConfigurationError(LPPGamesError):
    """Configuration file is invalid."""

    exit_code = 2

    def __init__(self, message: str, config_path: Path | None = None):
        if config_path:
            suggestion = f"Check your configuration at: {config_path}"
        else:
            suggestion = "Remove the file to fall back to the defaults"
        super().__init__(message, suggestion)
