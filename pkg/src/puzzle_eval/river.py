"""Actor/agent river crossing with boat capacity ``b``.

``N`` pairs start on the left bank.  Actor ``a_i`` may not share a bank with
a foreign agent ``A_j`` unless their own agent ``A_i`` is also there.  Safety
is judged on the banks once a crossing completes; anyone can row and the boat
never crosses empty.

Internally a state is a ``2N``-bit mask of who is on the left bank (bits
``0..N-1`` are actors, ``N..2N-1`` agents) plus the boat side, which keeps the
exhaustive search cheap: the reachable safe set is a few thousand states even
at ``N = 10``.
"""

from __future__ import annotations

import enum
import os
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import (
    EmptyBoat,
    InvalidInstance,
    InvalidState,
    OverCapacity,
    ResourceLimit,
    TravelerOnWrongSide,
    UnknownIndividual,
    UnsafeResult,
)
from .outcome import Status, VerifyOutcome

DEFAULT_STATE_LIMIT = 2**26
STATE_LIMIT_ENV = "PUZZLE_EVAL_STATE_LIMIT"

_LABEL_RE = re.compile(r"^([aA])(\d+)$")

RiverMove = tuple[str, ...]


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def other(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class RiverInstance:
    n_pairs: int
    capacity: int

    def __post_init__(self) -> None:
        if not isinstance(self.n_pairs, int) or self.n_pairs < 1:
            raise InvalidInstance(f"n_pairs must be >= 1, got {self.n_pairs!r}")
        if not isinstance(self.capacity, int) or self.capacity < 2:
            raise InvalidInstance(f"capacity must be >= 2, got {self.capacity!r}")


@dataclass(frozen=True)
class RiverState:
    n_pairs: int
    left_actors: frozenset[int]
    left_agents: frozenset[int]
    boat: Side = Side.LEFT

    def __post_init__(self) -> None:
        everyone = set(range(1, self.n_pairs + 1))
        if not (self.left_actors <= everyone and self.left_agents <= everyone):
            raise InvalidState(f"indices must lie in 1..{self.n_pairs}")

    @property
    def right_actors(self) -> frozenset[int]:
        return frozenset(range(1, self.n_pairs + 1)) - self.left_actors

    @property
    def right_agents(self) -> frozenset[int]:
        return frozenset(range(1, self.n_pairs + 1)) - self.left_agents

    def mirrored(self) -> RiverState:
        return RiverState(self.n_pairs, self.right_actors, self.right_agents, self.boat.other())

    def is_goal(self) -> bool:
        return not self.left_actors and not self.left_agents and self.boat is Side.RIGHT


def start_state(n_pairs: int) -> RiverState:
    everyone = frozenset(range(1, n_pairs + 1))
    return RiverState(n_pairs, everyone, everyone, Side.LEFT)


def goal_state(n_pairs: int) -> RiverState:
    return RiverState(n_pairs, frozenset(), frozenset(), Side.RIGHT)


# -- safety -------------------------------------------------------------------


def bank_safe(actors: int, agents: int) -> bool:
    """Safety of one bank given bitmasks of the actors and agents on it.

    This is the single place the crossing rule lives; swap it to change the
    puzzle variant.
    """
    return agents == 0 or actors & ~agents == 0


def is_safe(state: RiverState, rule: Callable[[int, int], bool] = bank_safe) -> bool:
    la, lg = _mask(state.left_actors), _mask(state.left_agents)
    full = (1 << state.n_pairs) - 1
    return rule(la, lg) and rule(full & ~la, full & ~lg)


# -- label / mask conversion --------------------------------------------------


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def _indices(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def label_bit(label: str, n: int) -> int:
    match = _LABEL_RE.match(label) if isinstance(label, str) else None
    if not match or not 1 <= int(match.group(2)) <= n:
        raise UnknownIndividual(f"{label!r} is not an individual of a {n}-pair instance")
    i = int(match.group(2)) - 1
    return 1 << (i if match.group(1) == "a" else n + i)


def _bit_label(bit: int, n: int) -> str:
    return f"a{bit + 1}" if bit < n else f"A{bit - n + 1}"


def canonical_move(labels: Iterable[str], n: int) -> RiverMove:
    """Sort travelers: actors before agents, each by index."""
    bits = sorted({label_bit(lab, n).bit_length() - 1 for lab in labels})
    return tuple(_bit_label(b, n) for b in bits)


def _move_labels(mask: int, n: int) -> RiverMove:
    return tuple(_bit_label(b, n) for b in range(2 * n) if mask >> b & 1)


def _encode(state: RiverState) -> tuple[int, int]:
    n = state.n_pairs
    return _mask(state.left_actors) | _mask(state.left_agents) << n, int(state.boat is Side.RIGHT)


def _decode(left: int, boat: int, n: int) -> RiverState:
    full = (1 << n) - 1
    return RiverState(n, _indices(left & full), _indices(left >> n), Side.RIGHT if boat else Side.LEFT)


# -- search -------------------------------------------------------------------


def _successors(left: int, boat: int, n: int, capacity: int, rule=bank_safe):
    """Yield ``(move_mask, new_left)`` in canonical order.

    Order: by number of travelers, then lexicographically over the
    actors-then-agents bit order.
    """
    full = (1 << n) - 1
    everyone = (1 << 2 * n) - 1
    side = left if boat == 0 else everyone & ~left
    positions = [i for i in range(2 * n) if side >> i & 1]
    for k in range(1, capacity + 1):
        for combo in combinations(positions, k):
            m = 0
            for i in combo:
                m |= 1 << i
            new_left = left & ~m if boat == 0 else left | m
            la, lg = new_left & full, new_left >> n
            if rule(la, lg) and rule(full & ~la, full & ~lg):
                yield m, new_left


def neighbors(state: RiverState, instance: RiverInstance) -> list[tuple[RiverMove, RiverState]]:
    n = instance.n_pairs
    left, boat = _encode(state)
    return [
        (_move_labels(m, n), _decode(new_left, 1 - boat, n))
        for m, new_left in _successors(left, boat, n, instance.capacity)
    ]


def legal_moves(state: RiverState, instance: RiverInstance) -> set[RiverMove]:
    return {move for move, _ in neighbors(state, instance)}


@dataclass(frozen=True)
class Solvability:
    """Either a minimal witness (``solvable``) or an exhausted reachable set."""

    solvable: bool
    states_explored: int
    min_crossings: int | None = None
    witness: tuple[RiverMove, ...] | None = None

    def to_dict(self) -> dict:
        if self.solvable:
            return {
                "verdict": "SOLVABLE",
                "min_crossings": self.min_crossings,
                "states_explored": self.states_explored,
                "witness": [list(m) for m in self.witness],
            }
        return {"verdict": "UNSOLVABLE", "states_explored": self.states_explored}


def default_state_limit() -> int:
    raw = os.environ.get(STATE_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_STATE_LIMIT


def solve_bfs(
    instance: RiverInstance,
    state_limit: int | None = None,
    reverse_order: bool = False,
) -> Solvability:
    """Breadth-first search from everyone-left to everyone-right.

    Returns a shortest witness, or Unsolvable once the whole reachable safe
    set has been expanded without meeting the goal.  ``reverse_order`` expands
    neighbors back to front; it exists to cross-check verdicts and never
    changes them.
    """
    if state_limit is None:
        state_limit = default_state_limit()
    n, b = instance.n_pairs, instance.capacity
    start = ((1 << 2 * n) - 1, 0)
    goal = (0, 1)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        left, boat = node
        succ = list(_successors(left, boat, n, b))
        if reverse_order:
            succ.reverse()
        for m, new_left in succ:
            nxt = (new_left, 1 - boat)
            if nxt not in parent:
                parent[nxt] = (node, m)
                if len(parent) > state_limit:
                    raise ResourceLimit(
                        f"more than {state_limit} states for N={n}, b={b}; "
                        "raise the bound, this is not an unsolvability verdict"
                    )
                queue.append(nxt)
    if goal not in parent:
        return Solvability(False, len(parent))
    path: list[RiverMove] = []
    node = goal
    while parent[node] is not None:
        node, m = parent[node]
        path.append(_move_labels(m, n))
    path.reverse()
    return Solvability(True, len(parent), len(path), tuple(path))


# -- verification ---------------------------------------------------------------


def apply_move(state: RiverState, travelers: Sequence[str], instance: RiverInstance) -> RiverState:
    """Ferry ``travelers`` from the boat's bank; raise an IllegalMove subclass if illegal."""
    n = instance.n_pairs
    if len(travelers) == 0:
        raise EmptyBoat("the boat cannot cross empty")
    m = 0
    for label in travelers:
        m |= label_bit(label, n)
    if bin(m).count("1") != len(travelers):
        raise TravelerOnWrongSide(f"traveler listed twice in {list(travelers)}")
    if len(travelers) > instance.capacity:
        raise OverCapacity(f"{len(travelers)} travelers exceed capacity {instance.capacity}")
    left, boat = _encode(state)
    side = left if boat == 0 else ((1 << 2 * n) - 1) & ~left
    if m & ~side:
        stray = _move_labels(m & ~side, n)
        raise TravelerOnWrongSide(f"{list(stray)} not on the {state.boat.value} bank")
    new_left = left & ~m if boat == 0 else left | m
    full = (1 << n) - 1
    la, lg = new_left & full, new_left >> n
    if not (bank_safe(la, lg) and bank_safe(full & ~la, full & ~lg)):
        raise UnsafeResult(f"crossing {list(travelers)} leaves an actor with a foreign agent")
    return _decode(new_left, 1 - boat, n)


def verify(instance: RiverInstance, moves: Iterable[Sequence[str]]) -> VerifyOutcome:
    """Replay crossings, alternating left->right first.  Optimality is left to the caller."""
    state = start_state(instance.n_pairs)
    count = 0
    for i, travelers in enumerate(moves):
        try:
            state = apply_move(state, list(travelers), instance)
        except (TypeError, ValueError) as exc:
            reason = getattr(exc, "reason", "MalformedMove")
            return VerifyOutcome(Status.INVALID_MOVE, count, state, index=i, reason=reason)
        count += 1
    if state.is_goal():
        return VerifyOutcome(Status.CORRECT, count, state)
    return VerifyOutcome(Status.VALID_PREFIX, count, state)
