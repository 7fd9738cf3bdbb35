"""Grade free-text solution transcripts.

A transcript is reduced to the last move-list literal it contains, replayed
on the matching engine, and placed in one of six classes.  The classes keep
apart three things a pass/fail score lumps together: a wrong move, a legal
answer that simply stops early, and a refusal that is correct because the
instance has no solution.
"""

from __future__ import annotations

import enum
import json
import logging
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import blocks, hanoi, river
from .errors import InstanceMismatch, PuzzleEvalError, ResourceLimit
from .outcome import Status

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class Puzzle(str, enum.Enum):
    HANOI = "hanoi"
    RIVER = "river"
    BLOCKS = "blocks"


class Classification(str, enum.Enum):
    CORRECT = "Correct"
    CORRECT_SUBOPTIMAL = "CorrectSuboptimal"
    INVALID_MOVE = "InvalidMove"
    TRUNCATED_VALID_PREFIX = "TruncatedValidPrefix"
    CLAIMED_IMPOSSIBLE = "ClaimedImpossible"
    PARSE_FAILURE = "ParseFailure"


# -- configuration ------------------------------------------------------------


@dataclass(frozen=True)
class PatternConfig:
    truncation: tuple[str, ...]
    impossibility: tuple[str, ...]
    impossibility_tail_fraction: float = 0.3
    hanoi_peg_base: int = 0
    blocks_optimal_cap: int = blocks.DEFAULT_MAX_BLOCKS
    _compiled: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._compiled["truncation"] = [re.compile(p, re.IGNORECASE) for p in self.truncation]
        self._compiled["impossibility"] = [
            re.compile(p, re.IGNORECASE) for p in self.impossibility
        ]

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PatternConfig:
        return cls(
            truncation=tuple(data.get("truncation", ())),
            impossibility=tuple(data.get("impossibility", ())),
            impossibility_tail_fraction=float(data.get("impossibility_tail_fraction", 0.3)),
            hanoi_peg_base=int(data.get("hanoi_peg_base", 0)),
            blocks_optimal_cap=int(data.get("blocks_optimal_cap", blocks.DEFAULT_MAX_BLOCKS)),
        )

    @classmethod
    def load(cls, path: str | Path | None = None) -> PatternConfig:
        """Read a pattern file; ``None`` loads the bundled defaults."""
        if path is None:
            text = resources.files(__package__).joinpath("patterns.json").read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        return cls.from_dict(json.loads(text))


_default_config: PatternConfig | None = None


def default_config() -> PatternConfig:
    global _default_config
    if _default_config is None:
        _default_config = PatternConfig.load()
    return _default_config


# -- extraction ---------------------------------------------------------------

_Q = r"[\"']?"
_ITEM = {
    Puzzle.HANOI: r"\[\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*\]",
    Puzzle.RIVER: rf"\[\s*(?:{_Q}[aA]\d+{_Q}(?:\s*,\s*{_Q}[aA]\d+{_Q})*)?\s*,?\s*\]",
    Puzzle.BLOCKS: rf"\[\s*{_Q}\w+{_Q}\s*,\s*{_Q}\w+{_Q}\s*\]",
}
_LIST = {p: re.compile(rf"\[\s*{item}(?:\s*,\s*{item})*") for p, item in _ITEM.items()}
_ITEMS = {p: re.compile(item) for p, item in _ITEM.items()}
_CLOSE = re.compile(r"\s*,?\s*\]")
_ELLIPSIS = re.compile(r"\s*,?\s*(?:\.\.\.|…)")
_INT = re.compile(r"-?\d+")
_RIVER_LABEL = re.compile(r"[aA]\d+")
_BLOCK_LABEL = re.compile(r"\w+")
_ANY_LIST = re.compile(r"\[\s*\[")


def _parse_item(puzzle: Puzzle, raw: str, config: PatternConfig):
    if puzzle is Puzzle.HANOI:
        disk, src, dst = (int(x) for x in _INT.findall(raw))
        base = config.hanoi_peg_base
        return hanoi.HanoiMove(disk, src - base, dst - base)
    if puzzle is Puzzle.RIVER:
        return tuple(_RIVER_LABEL.findall(raw))
    block, to = _BLOCK_LABEL.findall(raw)
    return blocks.BlocksMove(block, blocks.TABLE if to.lower() == blocks.TABLE else to)


def extract_moves(
    text: str, puzzle: Puzzle | str, config: PatternConfig | None = None
) -> tuple[list, bool]:
    """Return the moves of the last move-list literal in ``text`` and a truncation flag.

    The flag is set when any truncation pattern occurs in the text, or when
    the last list is left open or trails off in an ellipsis.  Text with no
    list yields ``([], flag)``.
    """
    config = config or default_config()
    puzzle = Puzzle(puzzle)
    truncated = any(p.search(text) for p in config._compiled["truncation"])
    last = None
    for last in _LIST[puzzle].finditer(text):
        pass
    if last is None:
        return [], truncated
    tail = text[last.end() :]
    if not _CLOSE.match(tail) or _ELLIPSIS.match(tail):
        truncated = True
    moves = [_parse_item(puzzle, m.group(0), config) for m in _ITEMS[puzzle].finditer(last.group(0), 1)]
    return moves, truncated


def render_moves(moves: Iterable[Sequence]) -> str:
    """Serialize moves in the JSON wire format."""
    return json.dumps([list(m) for m in moves])


def _last_sentence_start(text: str) -> int:
    body = text.rstrip()
    start = 0
    for m in re.finditer(r"[.!?](?=\s+\S)", body):
        start = m.end()
    return start


def detect_impossibility_claim(text: str, config: PatternConfig | None = None) -> bool:
    """True when the text concludes that the instance cannot be solved.

    A phrase counts only in the closing stretch of the text (the last
    ``impossibility_tail_fraction`` of it, or the final sentence), and only if
    no move list follows it.
    """
    config = config or default_config()
    if not text.strip():
        return False
    tail_start = len(text) * (1.0 - config.impossibility_tail_fraction)
    last_sentence = _last_sentence_start(text)
    for pattern in config._compiled["impossibility"]:
        for m in pattern.finditer(text):
            if m.start() < tail_start and m.start() < last_sentence:
                continue
            if _ANY_LIST.search(text, m.end()):
                continue
            return True
    return False


# -- grading --------------------------------------------------------------------


@dataclass(frozen=True)
class Transcript:
    id: str
    puzzle: Puzzle
    params: dict[str, Any]
    text: str

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Transcript:
        try:
            puzzle = Puzzle(data["puzzle"])
            params = data["params"]
            text = data["text"]
            tid = data["id"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceMismatch(f"not a transcript record: {exc}") from exc
        if not isinstance(params, dict) or not isinstance(text, str):
            raise InstanceMismatch("params must be an object and text a string")
        return cls(str(tid), puzzle, params, text)


@dataclass(frozen=True)
class GradeReport:
    id: str
    puzzle: str
    classification: Classification
    moves_found: int
    truncation_phrase_detected: bool
    optimal: bool | None = None
    detail: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    @property
    def binary_failure(self) -> bool:
        """Whether a plain pass/fail checker would score this as a failure."""
        return self.classification not in (
            Classification.CORRECT,
            Classification.CORRECT_SUBOPTIMAL,
        )

    @property
    def misclassified(self) -> bool:
        """A failure under pass/fail scoring that is a stop-early or a justified refusal."""
        if self.classification is Classification.TRUNCATED_VALID_PREFIX:
            return True
        return (
            self.classification is Classification.CLAIMED_IMPOSSIBLE
            and self.detail.get("justified") is True
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "id": self.id,
            "puzzle": self.puzzle,
            "classification": self.classification.value,
            "moves_found": self.moves_found,
            "truncation_phrase_detected": self.truncation_phrase_detected,
            "optimal": self.optimal,
            "detail": self.detail,
            "error": self.error,
        }


@lru_cache(maxsize=256)
def river_oracle(n_pairs: int, capacity: int) -> river.Solvability | None:
    """Cached BFS verdict; None when the instance exceeds the search bound."""
    try:
        return river.solve_bfs(river.RiverInstance(n_pairs, capacity))
    except ResourceLimit:
        return None


def _instance(t: Transcript):
    p = t.params
    try:
        if t.puzzle is Puzzle.HANOI:
            n = p["n"]
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise InstanceMismatch(f"hanoi needs a positive integer n, got {n!r}")
            return n
        if t.puzzle is Puzzle.RIVER:
            n, b = p["n_pairs"], p["capacity"]
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (n, b)):
                raise InstanceMismatch("river needs integer n_pairs and capacity")
            return river.RiverInstance(n, b)
        initial = blocks.BlocksState.of(p["initial"])
        goal = blocks.BlocksState.of(p["goal"])
        if initial.blocks != goal.blocks:
            raise InstanceMismatch("initial and goal use different blocks")
        return initial, goal
    except InstanceMismatch:
        raise
    except (KeyError, TypeError, ValueError, PuzzleEvalError) as exc:
        raise InstanceMismatch(f"bad {t.puzzle.value} params {p!r}: {exc}") from exc


def grade(transcript: Transcript, config: PatternConfig | None = None) -> GradeReport:
    """Classify one transcript.

    Order of decisions: an impossibility claim without a correct move list is
    ClaimedImpossible (justified only if the instance really is unsolvable);
    no list at all is ParseFailure; otherwise the list is replayed and graded
    Correct / CorrectSuboptimal / InvalidMove / TruncatedValidPrefix.  A legal
    but unfinished list is TruncatedValidPrefix whether or not a truncation
    phrase is present; the phrase flag records which.
    """
    config = config or default_config()
    t = transcript
    instance = _instance(t)
    moves, truncated = extract_moves(t.text, t.puzzle, config)
    claim = detect_impossibility_claim(t.text, config)

    if t.puzzle is Puzzle.HANOI:
        outcome = hanoi.verify(instance, moves) if moves else None
    elif t.puzzle is Puzzle.RIVER:
        outcome = river.verify(instance, moves) if moves else None
    else:
        initial, goal = instance
        outcome = (
            blocks.verify(initial, goal, moves, max_blocks=config.blocks_optimal_cap)
            if moves
            else None
        )

    def report(cls: Classification, optimal=None, **detail) -> GradeReport:
        return GradeReport(t.id, t.puzzle.value, cls, len(moves), truncated, optimal, detail)

    if claim and not (outcome is not None and outcome.correct):
        justified: bool | None = False
        if t.puzzle is Puzzle.RIVER:
            verdict = river_oracle(instance.n_pairs, instance.capacity)
            justified = None if verdict is None else not verdict.solvable
        return report(Classification.CLAIMED_IMPOSSIBLE, justified=justified)
    if outcome is None:
        return report(Classification.PARSE_FAILURE)
    if outcome.status is Status.CORRECT:
        optimal = outcome.optimal
        if t.puzzle is Puzzle.RIVER:
            verdict = river_oracle(instance.n_pairs, instance.capacity)
            if verdict is not None and verdict.solvable:
                optimal = outcome.moves_checked == verdict.min_crossings
        cls = Classification.CORRECT_SUBOPTIMAL if optimal is False else Classification.CORRECT
        return report(cls, optimal, length=outcome.moves_checked)
    if outcome.status is Status.INVALID_MOVE:
        return report(Classification.INVALID_MOVE, index=outcome.index, reason=outcome.reason)
    return report(Classification.TRUNCATED_VALID_PREFIX, prefix=outcome.moves_checked)


def _grade_safely(t: Transcript, config: PatternConfig) -> GradeReport:
    try:
        return grade(t, config)
    except InstanceMismatch as exc:
        return GradeReport(
            t.id, t.puzzle.value, Classification.PARSE_FAILURE, 0, False, error=str(exc)
        )


def summarize(reports: Sequence[GradeReport], skipped: int = 0) -> dict[str, Any]:
    by_class = Counter(r.classification.value for r in reports)
    by_puzzle: dict[str, dict[str, int]] = {}
    for r in reports:
        row = by_puzzle.setdefault(r.puzzle, {c.value: 0 for c in Classification})
        row[r.classification.value] += 1
    ids = Counter(r.id for r in reports)
    misclassified = sum(r.misclassified for r in reports)
    return {
        "schema_version": SCHEMA_VERSION,
        "total": len(reports),
        "skipped": skipped,
        "errors": sum(r.error is not None for r in reports),
        "by_classification": {c.value: by_class.get(c.value, 0) for c in Classification},
        "by_puzzle": by_puzzle,
        "binary_failures": sum(r.binary_failure for r in reports),
        "misclassified": misclassified,
        "misclassification_fraction": misclassified / len(reports) if reports else 0.0,
        "duplicate_ids": sorted(i for i, k in ids.items() if k > 1),
    }


def grade_batch(
    transcripts: Iterable[Transcript],
    config: PatternConfig | None = None,
    jobs: int = 1,
) -> tuple[list[GradeReport], dict[str, Any]]:
    """Grade every transcript; reports come back in input order.

    Bad instance parameters never abort the batch: they produce a
    ParseFailure report with ``error`` set.
    """
    config = config or default_config()
    items = list(transcripts)
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda t: _grade_safely(t, config), items))
    else:
        reports = [_grade_safely(t, config) for t in items]
    summary = summarize(reports)
    if summary["duplicate_ids"]:
        log.warning("duplicate transcript ids: %s", ", ".join(summary["duplicate_ids"]))
    return reports, summary
