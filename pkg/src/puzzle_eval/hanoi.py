"""Tower of Hanoi: canonical solution, O(1)-per-move streaming, verification.

Pegs are 0-indexed (0 = source, 2 = target) and disk 1 is the smallest.
A state lists each peg top-first, so ``([1, 2, 3], [], [])`` is the start
position for three disks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    EmptySourcePeg,
    InvalidInstance,
    InvalidPeg,
    InvalidState,
    LargerOntoSmaller,
    NotTopmost,
    UnknownDisk,
)
from .outcome import Status, VerifyOutcome

N_PEGS = 3
MAX_MATERIALIZED_N = 30


class HanoiMove(NamedTuple):
    disk: int
    from_peg: int
    to_peg: int

    def inverse(self) -> HanoiMove:
        return HanoiMove(self.disk, self.to_peg, self.from_peg)


@dataclass(frozen=True)
class HanoiState:
    pegs: tuple[tuple[int, ...], ...]
    n_disks: int

    def __post_init__(self) -> None:
        if len(self.pegs) != N_PEGS:
            raise InvalidState(f"expected {N_PEGS} pegs, got {len(self.pegs)}")
        seen = sorted(d for peg in self.pegs for d in peg)
        if seen != list(range(1, self.n_disks + 1)):
            raise InvalidState(f"disks must be exactly 1..{self.n_disks}, got {seen}")
        for peg in self.pegs:
            if any(a >= b for a, b in zip(peg, peg[1:])):
                raise InvalidState(f"peg {list(peg)} is not ordered small-on-large")

    @classmethod
    def from_lists(cls, pegs: Sequence[Sequence[int]]) -> HanoiState:
        pegs = tuple(tuple(p) for p in pegs)
        return cls(pegs, sum(len(p) for p in pegs))

    def is_goal(self) -> bool:
        return len(self.pegs[N_PEGS - 1]) == self.n_disks

    def to_lists(self) -> list[list[int]]:
        return [list(p) for p in self.pegs]


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidInstance(f"number of disks must be a positive integer, got {n!r}")


def initial_state(n: int) -> HanoiState:
    _check_n(n)
    return HanoiState((tuple(range(1, n + 1)), (), ()), n)


def goal_state(n: int) -> HanoiState:
    _check_n(n)
    return HanoiState(((), (), tuple(range(1, n + 1))), n)


def optimal_length(n: int) -> int:
    return 2**n - 1


def nth_move(n: int, m: int) -> HanoiMove:
    """Return move ``m`` (1-based) of the canonical n-disk solution.

    Binary-counter form: the disk is one plus the number of trailing zeros
    of ``m``; the source and target follow from ``m & (m - 1)`` and
    ``m | (m - 1)`` modulo 3.  That cycle moves the tower to peg 2 for odd
    ``n`` and to peg 1 for even ``n``, so pegs 1 and 2 are swapped when ``n``
    is even.
    """
    disk = (m & -m).bit_length()
    src = (m & (m - 1)) % 3
    dst = ((m | (m - 1)) + 1) % 3
    if n % 2 == 0:
        src, dst = _SWAP12[src], _SWAP12[dst]
    return HanoiMove(disk, src, dst)


_SWAP12 = (0, 2, 1)


def stream_solution(n: int) -> Iterator[HanoiMove]:
    """Yield the canonical solution one move at a time in O(1) memory."""
    _check_n(n)
    for m in range(1, 2**n):
        yield nth_move(n, m)


def solve(n: int) -> list[HanoiMove]:
    """Materialize the canonical 2**n - 1 move solution (recursive form)."""
    _check_n(n)
    if n > MAX_MATERIALIZED_N:
        raise InvalidInstance(
            f"solve() materializes 2**n - 1 moves; n={n} exceeds the cap of "
            f"{MAX_MATERIALIZED_N}, use stream_solution()"
        )
    moves: list[HanoiMove] = []

    def rec(k: int, src: int, dst: int, via: int) -> None:
        if k == 0:
            return
        rec(k - 1, src, via, dst)
        moves.append(HanoiMove(k, src, dst))
        rec(k - 1, via, dst, src)

    rec(n, 0, 2, 1)
    return moves


def _apply_inplace(pegs: list[list[int]], n: int, move: Sequence[int]) -> None:
    # pegs are stored bottom-first here so the top disk is pegs[i][-1]
    disk, src, dst = move
    if not (0 <= src < N_PEGS and 0 <= dst < N_PEGS) or src == dst:
        raise InvalidPeg(f"bad peg pair {src}->{dst}")
    if not 1 <= disk <= n:
        raise UnknownDisk(f"disk {disk} not in 1..{n}")
    source = pegs[src]
    if not source:
        raise EmptySourcePeg(f"peg {src} is empty")
    if source[-1] != disk:
        raise NotTopmost(f"disk {disk} is not on top of peg {src} (top is {source[-1]})")
    target = pegs[dst]
    if target and target[-1] < disk:
        raise LargerOntoSmaller(f"disk {disk} onto smaller disk {target[-1]}")
    target.append(source.pop())


def _to_internal(state: HanoiState) -> list[list[int]]:
    return [list(reversed(p)) for p in state.pegs]


def _from_internal(pegs: list[list[int]], n: int) -> HanoiState:
    return HanoiState(tuple(tuple(reversed(p)) for p in pegs), n)


def apply_move(state: HanoiState, move: Sequence[int]) -> HanoiState:
    """Return the successor of ``state``; raise an IllegalMove subclass if illegal."""
    pegs = _to_internal(state)
    _apply_inplace(pegs, state.n_disks, move)
    return _from_internal(pegs, state.n_disks)


def legal_moves(state: HanoiState) -> set[HanoiMove]:
    moves = set()
    for src, peg in enumerate(state.pegs):
        if not peg:
            continue
        disk = peg[0]
        for dst, other in enumerate(state.pegs):
            if dst != src and (not other or other[0] > disk):
                moves.add(HanoiMove(disk, src, dst))
    return moves


def verify(n: int, moves: Iterable[Sequence[int]]) -> VerifyOutcome:
    """Replay ``moves`` from the start position.

    Consumes the iterable lazily and keeps only the three pegs in memory, so
    a generator of any length can be checked.  Legal sequences that reach the
    goal are Correct regardless of length; ``optimal`` reports whether the
    length equals 2**n - 1.
    """
    _check_n(n)
    pegs: list[list[int]] = [list(range(n, 0, -1)), [], []]
    count = 0
    for i, move in enumerate(moves):
        try:
            _apply_inplace(pegs, n, move)
        except (TypeError, ValueError) as exc:
            reason = getattr(exc, "reason", "MalformedMove")
            return VerifyOutcome(
                Status.INVALID_MOVE, count, _from_internal(pegs, n), index=i, reason=reason
            )
        count += 1
    state = _from_internal(pegs, n)
    if len(pegs[2]) == n:
        return VerifyOutcome(Status.CORRECT, count, state, optimal=count == optimal_length(n))
    return VerifyOutcome(Status.VALID_PREFIX, count, state)
