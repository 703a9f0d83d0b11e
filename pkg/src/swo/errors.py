"""Exception types shared across the package.

Everything derives from SwoError so callers (and the CLI) can distinguish
domain failures from programming errors with a single except clause.
"""

from __future__ import annotations

__all__ = [
    "SwoError",
    "AlphabetMismatch",
    "NotTailEquivalent",
    "NotOrdered",
    "NoPeriodDetected",
    "SelectorAmbiguous",
    "NotInCylinder",
    "WindowTooSmall",
    "InfiniteDifference",
    "UnknownElement",
    "ValidationFailed",
    "IncompatibleConditions",
    "CoarseSelector",
    "AlreadyAssigned",
    "InconsistentComparator",
    "EmptyCut",
    "ParseError",
]


class SwoError(Exception):
    """Base class for all domain errors raised by this package."""


class AlphabetMismatch(SwoError):
    """Two streams were combined whose alphabets differ (or have the wrong size)."""


class NotTailEquivalent(SwoError):
    """An eventual-agreement comparison was requested for streams whose tails differ."""


class NotOrdered(SwoError):
    """An interpolation endpoint pair was not in lexicographic order."""


class NoPeriodDetected(SwoError):
    """The verdict sequence did not repeat for two full periods within the scan bound."""


class SelectorAmbiguous(SwoError):
    """The residue progression meets more than one verdict; the selector is too coarse
    relative to the detected verdict period."""


class NotInCylinder(SwoError):
    """The stream does not start with the 0,0,3,3 prefix the equity witness map needs."""


class WindowTooSmall(SwoError):
    """Two streams differ at a coordinate at or beyond the search window."""


class InfiniteDifference(SwoError):
    """Interpolation requires the inputs to differ at only finitely many coordinates."""


class UnknownElement(SwoError):
    """A label was used that the base preorder does not contain."""


class ValidationFailed(SwoError):
    """A condition handed to an operation does not validate against the base."""


class IncompatibleConditions(SwoError):
    """No common extension exists; carries the obstructing cycle."""

    def __init__(self, message: str, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class CoarseSelector(SwoError):
    """The selector's progression meets several distinct schedule entries."""


class AlreadyAssigned(SwoError):
    """The element already has a code in this embedding state."""


class InconsistentComparator(SwoError):
    """The comparison oracle's answers admit no position in the existing assignment."""


class EmptyCut(SwoError):
    """A cut selecting no assigned element has no supremum to lift."""


class ParseError(SwoError):
    """Stream text (or another CLI input) failed to parse.

    Carries the character position at which parsing failed.
    """

    def __init__(self, position: int, reason: str):
        super().__init__(f"parse error at position {position}: {reason}")
        self.position = position
        self.reason = reason
