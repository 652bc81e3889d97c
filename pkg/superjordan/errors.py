"""
Exception hierarchy for the super Jordan type toolkit.
Every library error carries the CLI exit code it maps to.
"""
from typing import List, Optional


class SuperJordanError(Exception):
    """Root of all library errors."""
    exit_code = 64


class ParseError(SuperJordanError):
    """Malformed module file, point expression or recipe."""
    exit_code = 65

    def __init__(self, message: str, position: Optional[str] = None, expected: Optional[str] = None):
        self.position = position
        self.expected = expected
        detail = message
        if position is not None:
            detail = f"{detail} (at {position})"
        if expected:
            detail = f"{detail}; expected {expected}"
        super().__init__(detail)


class UnknownGenerator(ParseError):
    """A generator name that the algebra does not declare."""


class ValidationError(SuperJordanError):
    """A module violates parity compatibility or the defining relations."""
    exit_code = 66

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        head = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"module failed validation: {head}{more}")


class NotContained(SuperJordanError):
    """Inner subspace is not contained in the outer one."""


class ResourceLimit(SuperJordanError):
    """A configured cap on minors, S-pairs or basis growth was exceeded."""
    exit_code = 70

    def __init__(self, kind: str, limit: int, observed: Optional[int] = None):
        self.kind = kind
        self.limit = limit
        self.observed = observed
        seen = f" (needed {observed})" if observed is not None else ""
        super().__init__(f"resource limit exceeded: {kind} > {limit}{seen}")


class NotSubalgebra(SuperJordanError):
    """Generator subset is not closed under the bracket."""


class AlgebraMismatch(SuperJordanError):
    """Two modules over different algebras were combined."""


class ZeroPoint(SuperJordanError):
    """The zero point was supplied where a nonzero point is required."""


class ConeViolation(SuperJordanError):
    """A point outside the self-commuting cone was used on a module where that is not allowed."""


class ProjectivityUndecided(SuperJordanError):
    """The rank certificate was inconclusive, so projectivity cannot be decided."""
    exit_code = 70


class RangeTooLarge(SuperJordanError):
    """Requested degree window is outside the supported range."""
