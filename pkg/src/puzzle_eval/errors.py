"""Exception hierarchy shared by the engines, the grader and the CLI."""

from __future__ import annotations


class PuzzleEvalError(Exception):
    """Base class for every error raised by this package."""


class InvalidInstance(PuzzleEvalError, ValueError):
    """Instance parameters are out of range (e.g. zero disks, capacity 1)."""


class InvalidState(PuzzleEvalError, ValueError):
    """A puzzle configuration violates its structural invariants."""


class IllegalMove(PuzzleEvalError, ValueError):
    """A move cannot be applied to a state.

    Subclasses name the precise reason; ``reason`` is the subclass name and is
    what verification outcomes and grade reports record.
    """

    @property
    def reason(self) -> str:
        return type(self).__name__


# Tower of Hanoi
class NotTopmost(IllegalMove):
    pass


class LargerOntoSmaller(IllegalMove):
    pass


class EmptySourcePeg(IllegalMove):
    pass


class InvalidPeg(IllegalMove):
    pass


class UnknownDisk(IllegalMove):
    pass


# River crossing
class OverCapacity(IllegalMove):
    pass


class TravelerOnWrongSide(IllegalMove):
    pass


class UnsafeResult(IllegalMove):
    pass


class EmptyBoat(IllegalMove):
    pass


class UnknownIndividual(IllegalMove):
    pass


# Blocks World (NotTopmost is shared with Hanoi)
class UnknownBlock(IllegalMove):
    pass


class DestinationNotTop(IllegalMove):
    pass


class ResourceLimit(PuzzleEvalError, RuntimeError):
    """Search exceeded its state budget; says nothing about solvability."""


class TooLarge(PuzzleEvalError, ValueError):
    """Instance is beyond the exhaustive-search cap."""


class LabelMismatch(PuzzleEvalError, ValueError):
    """Initial and goal configurations use different block sets."""


class DomainError(PuzzleEvalError, ValueError):
    """Numeric argument outside its mathematical domain."""


class InstanceMismatch(PuzzleEvalError, ValueError):
    """Transcript parameters do not describe an instance of the named puzzle."""
