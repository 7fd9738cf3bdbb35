"""Blocks World: verification, a linear-time near-optimal planner and an
exhaustive optimal planner for small instances.

A state is a collection of stacks, each listed bottom-to-top.  Stack order
carries no meaning, so states are stored with their stacks sorted; the table
has room for any number of new stacks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DestinationNotTop,
    InvalidState,
    LabelMismatch,
    NotTopmost,
    TooLarge,
    UnknownBlock,
)
from .outcome import Status, VerifyOutcome

TABLE = "table"
DEFAULT_MAX_BLOCKS = 8

Stacks = tuple[tuple[str, ...], ...]


class BlocksMove(NamedTuple):
    block: str
    to: str  # a block label, or TABLE


@dataclass(frozen=True)
class BlocksState:
    stacks: Stacks

    def __post_init__(self) -> None:
        stacks = tuple(sorted(tuple(s) for s in self.stacks))
        labels = [b for s in stacks for b in s]
        if any(not s for s in stacks):
            raise InvalidState("empty stacks are not stored")
        if len(set(labels)) != len(labels):
            raise InvalidState(f"duplicate block labels in {labels}")
        if TABLE in labels:
            raise InvalidState(f"{TABLE!r} is reserved for the table")
        object.__setattr__(self, "stacks", stacks)

    @classmethod
    def of(cls, stacks: Iterable[Sequence[str]]) -> BlocksState:
        return cls(tuple(tuple(s) for s in stacks))

    @property
    def blocks(self) -> frozenset[str]:
        return frozenset(b for s in self.stacks for b in s)

    def to_lists(self) -> list[list[str]]:
        return [list(s) for s in self.stacks]


@dataclass(frozen=True)
class PlanResult:
    moves: tuple[BlocksMove, ...]
    optimal: bool

    def __len__(self) -> int:
        return len(self.moves)


def _move_stacks(stacks: Stacks, block: str, to: str) -> Stacks:
    src = dst = None
    for i, s in enumerate(stacks):
        if block in s:
            src = i
        if to != TABLE and to in s:
            dst = i
    if src is None:
        raise UnknownBlock(f"no block {block!r}")
    if stacks[src][-1] != block:
        raise NotTopmost(f"{block!r} is under {stacks[src][-1]!r}")
    if to != TABLE:
        if dst is None:
            raise UnknownBlock(f"no block {to!r}")
        if dst == src or stacks[dst][-1] != to:
            raise DestinationNotTop(f"{to!r} is not a free top block")
    out = [list(s) for s in stacks]
    out[src].pop()
    if to == TABLE:
        out.append([block])
    else:
        out[dst].append(block)
    return tuple(sorted(tuple(s) for s in out if s))


def apply_move(state: BlocksState, move: Sequence[str]) -> BlocksState:
    block, to = move
    return BlocksState(_move_stacks(state.stacks, block, to))


def legal_moves(state: BlocksState) -> set[BlocksMove]:
    """Every top block onto every other top, plus to the table when that changes the state."""
    tops = [s[-1] for s in state.stacks]
    moves = set()
    for s in state.stacks:
        top = s[-1]
        if len(s) > 1:
            moves.add(BlocksMove(top, TABLE))
        moves.update(BlocksMove(top, other) for other in tops if other != top)
    return moves


def _check_labels(initial: BlocksState, goal: BlocksState) -> None:
    if initial.blocks != goal.blocks:
        raise LabelMismatch(
            f"initial blocks {sorted(initial.blocks)} != goal blocks {sorted(goal.blocks)}"
        )


def _goal_below(goal: BlocksState) -> dict[str, str | None]:
    below: dict[str, str | None] = {}
    for s in goal.stacks:
        for h, b in enumerate(s):
            below[b] = s[h - 1] if h else None
    return below


def _in_position(state: BlocksState, goal: BlocksState) -> dict[str, bool]:
    # a block is placed iff its whole substack equals a prefix of a goal stack
    below = _goal_below(goal)
    placed: dict[str, bool] = {}
    for s in state.stacks:
        ok = True
        for h, b in enumerate(s):
            ok = ok and below[b] == (s[h - 1] if h else None)
            placed[b] = ok
    return placed


def misplaced_count(initial: BlocksState, goal: BlocksState) -> int:
    _check_labels(initial, goal)
    return sum(not ok for ok in _in_position(initial, goal).values())


def near_optimal_plan(initial: BlocksState, goal: BlocksState) -> PlanResult:
    """Unstack every misplaced block to the table, then build the goal bottom-up.

    Linear in the number of blocks; at most two moves per misplaced block.
    """
    _check_labels(initial, goal)
    placed = _in_position(initial, goal)
    moves: list[BlocksMove] = []
    for s in initial.stacks:
        for h in range(len(s) - 1, 0, -1):
            if placed[s[h]]:
                break
            moves.append(BlocksMove(s[h], TABLE))
    for s in goal.stacks:
        for h in range(1, len(s)):
            if not placed[s[h]]:
                moves.append(BlocksMove(s[h], s[h - 1]))
    return PlanResult(tuple(moves), optimal=False)


def _successors(stacks: Stacks) -> list[tuple[BlocksMove, Stacks]]:
    out = []
    for i, s in enumerate(stacks):
        top = s[-1]
        rest = stacks[:i] + stacks[i + 1 :]
        shrunk = (s[:-1],) if len(s) > 1 else ()
        if len(s) > 1:
            nxt = tuple(sorted(rest + shrunk + ((top,),)))
            out.append((BlocksMove(top, TABLE), nxt))
        for j, t in enumerate(rest):
            grown = rest[:j] + (t + (top,),) + rest[j + 1 :]
            out.append((BlocksMove(top, t[-1]), tuple(sorted(grown + shrunk))))
    out.sort(key=lambda pair: pair[1])
    return out


def optimal_plan(
    initial: BlocksState, goal: BlocksState, max_blocks: int = DEFAULT_MAX_BLOCKS
) -> PlanResult:
    """Shortest plan by breadth-first search over all stack configurations.

    Ties are broken by expanding successors in sorted state order, so the plan
    is deterministic.  Raises TooLarge above ``max_blocks``; every Blocks World
    instance is solvable, the cap only bounds the search.
    """
    _check_labels(initial, goal)
    n = len(initial.blocks)
    if n > max_blocks:
        raise TooLarge(f"{n} blocks exceed the exhaustive-search cap of {max_blocks}")
    start, target = initial.stacks, goal.stacks
    parent: dict[Stacks, tuple[Stacks, BlocksMove] | None] = {start: None}
    queue = deque([start])
    while queue and target not in parent:
        node = queue.popleft()
        for move, nxt in _successors(node):
            if nxt not in parent:
                parent[nxt] = (node, move)
                if nxt == target:
                    break
                queue.append(nxt)
    plan: list[BlocksMove] = []
    node = target
    while parent[node] is not None:
        node, move = parent[node]
        plan.append(move)
    plan.reverse()
    return PlanResult(tuple(plan), optimal=True)


def verify(
    initial: BlocksState,
    goal: BlocksState,
    moves: Iterable[Sequence[str]],
    max_blocks: int = DEFAULT_MAX_BLOCKS,
) -> VerifyOutcome:
    """Replay ``moves``; on success report optimality when the exhaustive
    search is within ``max_blocks``, otherwise leave it unknown."""
    _check_labels(initial, goal)
    stacks = initial.stacks
    count = 0
    for i, move in enumerate(moves):
        try:
            block, to = move
            stacks = _move_stacks(stacks, block, to)
        except (TypeError, ValueError) as exc:
            reason = getattr(exc, "reason", "MalformedMove")
            return VerifyOutcome(
                Status.INVALID_MOVE, count, BlocksState(stacks), index=i, reason=reason
            )
        count += 1
    state = BlocksState(stacks)
    if stacks != goal.stacks:
        return VerifyOutcome(Status.VALID_PREFIX, count, state)
    optimal = None
    if len(initial.blocks) <= max_blocks:
        optimal = count == len(optimal_plan(initial, goal, max_blocks))
    return VerifyOutcome(Status.CORRECT, count, state, optimal=optimal)
