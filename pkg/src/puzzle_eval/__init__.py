"""Solvers, verifiers and a transcript grader for planning-puzzle evaluations."""

from .budget import GrowthMode, TokenModel, max_solvable_n, success_probability, tokens_required
from .grader import Classification, GradeReport, PatternConfig, Transcript, grade, grade_batch
from .outcome import Status, VerifyOutcome

__all__ = [
    "Classification",
    "GradeReport",
    "GrowthMode",
    "PatternConfig",
    "Status",
    "TokenModel",
    "Transcript",
    "VerifyOutcome",
    "grade",
    "grade_batch",
    "max_solvable_n",
    "success_probability",
    "tokens_required",
]

__version__ = "0.1.0"
