"""Exception taxonomy shared by all modules.

Domain errors (bad inputs, unsupported regions, exhausted budgets) derive
from ``DominoTwistError``; ``InvariantViolationError`` is different in kind,
it means the library itself is wrong and should never be caught in normal
use.
"""


class DominoTwistError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidRegionError(DominoTwistError, ValueError):
    """Malformed region input (duplicates, bad shorthand, bad squares)."""


class TilingError(DominoTwistError, ValueError):
    """A domino set fails to tile its region.

    ``reason`` is one of "overlap", "gap", "outside", "colors";
    ``cube`` is the first offending cube.
    """

    def __init__(self, reason: str, cube, message: str):
        super().__init__(message)
        self.reason = reason
        self.cube = cube


class InvalidMoveError(DominoTwistError, ValueError):
    """A flip or trit that is not applicable to the given tiling."""


class UnsupportedRegionError(DominoTwistError, ValueError):
    """The operation needs a cylinder / pseudocylinder and the region is not one."""


class NotEmbeddableError(DominoTwistError):
    """No tileable box complement found within the search budget."""


class ResourceLimitError(DominoTwistError):
    """An enumeration exceeded its configured budget.

    ``partial`` carries whatever incomplete result was assembled before the
    budget ran out, when the operation has one to offer.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DegenerateInputError(DominoTwistError, ValueError):
    """Geometric predicate evaluated on a degenerate configuration."""


class NotDisjointError(DominoTwistError, ValueError):
    """Two curves that must be disjoint share a point."""


class InvariantViolationError(RuntimeError):
    """A theorem-backed runtime assertion failed: an implementation bug."""
