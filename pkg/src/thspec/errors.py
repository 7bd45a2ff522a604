"""Exception types shared across the package."""

from __future__ import annotations


class ThSpecError(Exception):
    """Base class for all errors raised by this package."""


class TableParseError(ThSpecError):
    """A molecule parameter table line could not be parsed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(ThSpecError):
    """A molecule parameter violates an invariant; names the offending field."""

    def __init__(self, message: str, field: str):
        super().__init__(message)
        self.field = field


class DomainError(ThSpecError, ValueError):
    """An argument lies outside the operation's admissible domain."""


class NoBoundBranchError(ThSpecError):
    """No real bound-state branch: a derived coefficient that must be
    non-negative came out negative."""

    def __init__(self, name: str, value: float):
        super().__init__(f"no real bound-state branch: {name} = {value!r} < 0")
        self.name = name
        self.value = value


class SingularityError(ThSpecError):
    """Potential evaluated at (or too close to) its pole radius."""

    def __init__(self, r_s: float):
        super().__init__(f"potential has a pole at r_s = {r_s!r} A")
        self.r_s = r_s


class UnboundLevelError(ThSpecError):
    """The requested vibrational level does not exist in the well."""

    def __init__(self, n: int, detail: str = ""):
        msg = f"no bound level n = {n}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.n = n


class GridError(ThSpecError):
    """Radial grid configuration is unusable (e.g. contains the pole)."""


class ConvergenceError(ThSpecError):
    """A numerical search or quadrature failed to converge; carries
    diagnostic detail in the message."""
