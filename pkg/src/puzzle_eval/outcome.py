from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class Status(str, enum.Enum):
    CORRECT = "Correct"
    VALID_PREFIX = "ValidPrefix"
    INVALID_MOVE = "InvalidMove"


@dataclass(frozen=True)
class VerifyOutcome:
    """Result of replaying a move sequence against an instance.

    ``moves_checked`` counts the legal moves applied before stopping.  For
    ``InvalidMove``, ``index`` is the 0-based position of the first illegal
    move and ``reason`` names the violated rule.  ``state`` is the last legal
    state reached.  ``optimal`` is None when optimality is unknown.
    """

    status: Status
    moves_checked: int
    state: Any = None
    index: int | None = None
    reason: str | None = None
    optimal: bool | None = None

    @property
    def correct(self) -> bool:
        return self.status is Status.CORRECT

    def describe(self) -> str:
        if self.status is Status.CORRECT:
            if self.optimal is None:
                return "Correct"
            return "Correct (optimal)" if self.optimal else "Correct (suboptimal)"
        if self.status is Status.VALID_PREFIX:
            return f"ValidPrefix ({self.moves_checked} legal moves, goal not reached)"
        return f"InvalidMove at index {self.index}: {self.reason}"
