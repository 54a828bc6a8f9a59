"""
Exception hierarchy for cknsym.
"""

from typing import List, Optional


class CknsymError(Exception):
    """Base class for every error raised by cknsym."""


class InvalidParameterError(CknsymError, ValueError):
    """A parameter lies outside the range an operation accepts."""


class DomainError(InvalidParameterError):
    """A closed-form expression is evaluated outside its domain."""


class InadmissibleParameters(InvalidParameterError):
    """A parameter point failed the admissibility checks."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("inadmissible parameters: " + "; ".join(self.violations))


class NoRootError(CknsymError, ArithmeticError):
    """A bracketed root search found no sign change."""

    def __init__(self, message: str, sign: int):
        self.sign = sign
        super().__init__(f"{message} (function sign {'+' if sign > 0 else '-'} on bracket)")


class NonConvergenceError(CknsymError, RuntimeError):
    """A minimization hit its iteration cap; ``result`` holds the best iterate."""

    def __init__(self, message: str, result: Optional[object] = None):
        self.result = result
        super().__init__(message)


class InconsistentVerdictError(CknsymError, AssertionError):
    """Symmetry and symmetry breaking were both certified for one point."""
