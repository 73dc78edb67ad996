"""Exception types shared across the package.

The CLI maps each class to a distinct exit code.
"""


class ResourceLimitError(ValueError):
    """A requested computation exceeds a configured size ceiling."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ExcludedCaseError(ValueError):
    """A case deliberately left out of scope (e.g. the alternating group of degree 6)."""
