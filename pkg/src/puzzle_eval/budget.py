"""Output-token budget arithmetic for exhaustive Hanoi move lists.

All sizes are found by exact integer search.  The closed-form estimates
``log2(L_max / 10)`` (final list only) and ``log2(sqrt(L_max / 5))`` (list
restated every step) are only approximations of the same quantities and are
not used.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .errors import DomainError, InvalidInstance

DEFAULT_TOKENS_PER_MOVE = 10


class GrowthMode(str, enum.Enum):
    LINEAR = "linear"  # final move list only
    QUADRATIC = "quadratic"  # full list restated after every move


@dataclass(frozen=True)
class TokenModel:
    l_max: int
    tokens_per_move: Real = DEFAULT_TOKENS_PER_MOVE
    overhead_c: Real = 0

    def __post_init__(self) -> None:
        if not self.tokens_per_move > 0:
            raise DomainError(f"tokens_per_move must be > 0, got {self.tokens_per_move}")
        if self.overhead_c < 0:
            raise DomainError(f"overhead must be >= 0, got {self.overhead_c}")
        if self.l_max <= 0:
            raise DomainError(f"l_max must be positive, got {self.l_max}")


def success_probability(p: float, t: int) -> float:
    """Chance that ``t`` independent tokens are all right at per-token accuracy ``p``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"per-token accuracy must lie in [0, 1], got {p}")
    if t < 0:
        raise DomainError(f"token count must be >= 0, got {t}")
    return p**t


def _exact(x: Real):
    # keep integers exact and floats as exact rationals so comparisons never round
    return x if isinstance(x, int) else Fraction(x)


def tokens_required(n: int, mode: GrowthMode | str, model: TokenModel):
    """Tokens needed to write out an n-disk solution.

    Linear: ``per_move * (2**n - 1) + C``.  Quadratic: ``per_move * M(M+1)/2``
    with ``M = 2**n - 1``, the exact sum rather than ``5 * 4**n``.  Integer
    inputs give an ``int``; fractional inputs an exact ``Fraction``.
    """
    if n < 1:
        raise InvalidInstance(f"n must be >= 1, got {n}")
    mode = GrowthMode(mode)
    per = _exact(model.tokens_per_move)
    m = 2**n - 1
    if mode is GrowthMode.LINEAR:
        total = per * m + _exact(model.overhead_c)
    else:
        total = per * (m * (m + 1) // 2)
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def max_solvable_n(model: TokenModel, mode: GrowthMode | str) -> int:
    """Largest n whose solution fits in ``l_max`` tokens (0 if none does)."""
    n = 0
    while tokens_required(n + 1, mode, model) <= model.l_max:
        n += 1
    return n


def collapse_gap(reported_collapse_n: int, model: TokenModel, mode: GrowthMode | str) -> int:
    """Headroom between the budget limit and an observed collapse point.

    Positive means the collapse happened before the budget ran out.
    """
    if reported_collapse_n < 1:
        raise InvalidInstance(f"collapse size must be >= 1, got {reported_collapse_n}")
    return max_solvable_n(model, mode) - reported_collapse_n


def budget_table(model: TokenModel, mode: GrowthMode | str, extra_rows: int = 2):
    """Rows ``(n, tokens_required, within_limit)`` up to ``N_max + extra_rows``."""
    n_max = max_solvable_n(model, mode)
    rows = []
    for n in range(1, n_max + extra_rows + 1):
        tokens = tokens_required(n, mode, model)
        rows.append((n, tokens, tokens <= model.l_max))
    return rows, n_max
