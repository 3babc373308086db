"""Exception types shared across the package.

The CLI maps UsageError to exit code 2 and DomainError (including
UnsupportedConstructionError) to exit code 1.
"""

from __future__ import annotations


class UsageError(ValueError):
    """A caller passed arguments outside an operation's contract."""


class DomainError(ValueError):
    """Inputs are well-formed but mathematically inadmissible."""


class UnsupportedConstructionError(DomainError):
    """The requested object exists (or may exist) but no implemented
    construction produces it."""


class BudgetExceededError(RuntimeError):
    """A bounded search ran out of budget.  Carries whatever was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
