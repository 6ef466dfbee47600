"""Exception taxonomy shared by every module.

All failures raised on purpose derive from WorkbenchError so callers can
catch the whole family with one clause; the usual Python errors (ValueError,
TypeError) are still used for plain argument mistakes.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all deliberate failures."""


class CompositeInput(WorkbenchError):
    """A number that had to be prime is not."""


class ZeroInverse(WorkbenchError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class BudgetExceeded(WorkbenchError):
    """A configured enumeration or memory budget would be exceeded."""


class SizeBudget(BudgetExceeded):
    """A pairwise enumeration larger than the configured pair budget."""


class ParseError(WorkbenchError):
    """Rejected expression text; `position` is a 0-based offset into it."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeOverflow(WorkbenchError):
    """Parsed expression expands past the supported total degree."""


class ZeroPolynomial(WorkbenchError):
    """The zero polynomial where a nonzero one is required."""


class DegreeVsCharacteristic(WorkbenchError):
    """Degree at or above the characteristic: multiplicity bookkeeping breaks."""


class NotHomogeneous(WorkbenchError):
    """A polynomial that had to be homogeneous is not."""


class ZeroShift(WorkbenchError):
    """Shift value 0 where a nonzero shift is required."""


class ZeroValue(WorkbenchError):
    """0 has no coset in the multiplicative group."""


class ZeroLevel(WorkbenchError):
    """Level value 0 where nonzero levels are required."""


class CosetCollision(WorkbenchError):
    """Two level values fell into the same coset."""


class LengthMismatch(WorkbenchError):
    """Parallel sequences of different lengths."""


class NotRequired(WorkbenchError):
    """Polynomial has a nonconstant single-variable factor."""


class DuplicateY(WorkbenchError):
    """Repeated substitution point where distinct ones are required."""


class ConfigError(WorkbenchError):
    """Malformed sweep configuration; message names the offending field."""
