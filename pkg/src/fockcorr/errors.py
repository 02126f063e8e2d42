"""Shared exception types.

Exit-code contract for the CLI: usage errors exit 2, pole-guard violations
exit 3, resource limits exit 4.
"""


class FockcorrError(Exception):
    """Base class for all package errors."""


class ModeMismatchError(FockcorrError):
    """Arithmetic between series/coefficients of different ring modes."""


class NonUnitError(FockcorrError):
    """Inversion of a coefficient that is not a unit of its ring."""


class InexactDivisionError(FockcorrError):
    """Laurent division left a nonzero remainder."""


class PoleError(FockcorrError):
    """Evaluation at a pole (t = 1, s = 0, or a vanishing theta argument)."""


class ResourceLimitError(FockcorrError):
    """State enumeration exceeded the configured budget."""


class LabelError(FockcorrError):
    """Module label violates the constraints of its label set."""


class InternalCheckError(FockcorrError):
    """Two independently computed forms of the same quantity disagree."""
