"""Exception taxonomy shared by the library and the CLI exit-code contract."""

from __future__ import annotations


class TTBAError(Exception):
    """Base class for all package errors."""


class SchemaError(TTBAError):
    """Malformed input: bad JSON shape, bad rational text, wrong file kind."""


class ValidationError(TTBAError):
    """Structurally well-formed input violating a mathematical invariant."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations if violations is not None else [message]


class BudgetExceeded(TTBAError):
    """A cohomology level would exceed the configured matrix-entry budget."""

    def __init__(self, rows: int, cols: int, budget: int):
        super().__init__(
            f"differential of size {rows} x {cols} "
            f"({rows * cols} entries) exceeds budget {budget}"
        )
        self.rows = rows
        self.cols = cols
        self.budget = budget


class SearchBoundExceeded(TTBAError):
    """An enumeration (automorphisms, permutation witnesses) is too large."""
