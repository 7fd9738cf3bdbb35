"""Command-line entry point: ``puzzle-eval {solve,check,budget,grade,feasibility-sweep}``.

Exit codes: 0 success / Correct, 1 usage or parse error, 2 proven
unsolvable, 3 a checked move list is not a correct solution.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Sequence

from . import blocks, budget, grader, hanoi, river
from .errors import PuzzleEvalError, ResourceLimit

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNSOLVABLE = 2
EXIT_NOT_CORRECT = 3


class UsageError(Exception):
    pass


def atomic_write(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file and rename, so failures leave no partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _emit(text: str, output: str | None) -> None:
    if output:
        atomic_write(output, text)
    else:
        sys.stdout.write(text)


def _json_arg(raw: str, what: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: not valid JSON ({exc})") from exc


def _blocks_pair(args) -> tuple[blocks.BlocksState, blocks.BlocksState]:
    if args.initial is None or args.goal is None:
        raise UsageError("blocks needs --initial and --goal")
    initial = blocks.BlocksState.of(_json_arg(args.initial, "initial"))
    goal = blocks.BlocksState.of(_json_arg(args.goal, "goal"))
    return initial, goal


def _river_instance(args) -> river.RiverInstance:
    if args.pairs is None or args.capacity is None:
        raise UsageError("river needs --pairs and --capacity")
    return river.RiverInstance(args.pairs, args.capacity)


def _hanoi_n(args) -> int:
    if args.n is None:
        raise UsageError("hanoi needs --n")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    return args.n


# -- solve --------------------------------------------------------------------


def cmd_solve(args) -> int:
    if args.puzzle == "hanoi":
        n = _hanoi_n(args)
        _emit(grader.render_moves(hanoi.solve(n)) + "\n", args.output)
        return EXIT_OK
    if args.puzzle == "river":
        result = river.solve_bfs(_river_instance(args))
        if not result.solvable:
            print(f"UNSOLVABLE states_explored={result.states_explored}")
            if args.output:
                atomic_write(args.output, json.dumps(result.to_dict()) + "\n")
            return EXIT_UNSOLVABLE
        print(
            f"SOLVABLE min_crossings={result.min_crossings} "
            f"states_explored={result.states_explored}",
            file=sys.stderr,
        )
        _emit(grader.render_moves(result.witness) + "\n", args.output)
        return EXIT_OK
    initial, goal = _blocks_pair(args)
    if args.optimal:
        plan = blocks.optimal_plan(initial, goal, max_blocks=args.max_blocks)
    else:
        plan = blocks.near_optimal_plan(initial, goal)
    _emit(grader.render_moves(plan.moves) + "\n", args.output)
    return EXIT_OK


# -- check --------------------------------------------------------------------


def _load_moves(path: str):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, list) or not all(isinstance(m, list) for m in data):
        raise UsageError(f"{path}:1:1: expected a JSON array of moves")
    return data


def cmd_check(args) -> int:
    moves = _load_moves(args.moves)
    if args.puzzle == "hanoi":
        outcome = hanoi.verify(_hanoi_n(args), moves)
    elif args.puzzle == "river":
        instance = _river_instance(args)
        outcome = river.verify(instance, moves)
        if outcome.correct:
            try:
                oracle = river.solve_bfs(instance)
                optimal = outcome.moves_checked == oracle.min_crossings
                outcome = dataclasses.replace(outcome, optimal=optimal)
            except ResourceLimit:
                pass
    else:
        initial, goal = _blocks_pair(args)
        outcome = blocks.verify(initial, goal, moves, max_blocks=args.max_blocks)
    print(outcome.describe())
    return EXIT_OK if outcome.correct else EXIT_NOT_CORRECT


# -- budget -------------------------------------------------------------------


def cmd_budget(args) -> int:
    model = budget.TokenModel(
        l_max=args.l_max, tokens_per_move=args.tokens_per_move, overhead_c=args.overhead
    )
    rows, n_max = budget.budget_table(model, args.mode)
    print(f"{'n':>3}  {'tokens_required':>20}  within_limit")
    for n, tokens, ok in rows:
        print(f"{n:>3}  {str(tokens):>20}  {'yes' if ok else 'no'}")
    print(f"N_max = {n_max}")
    return EXIT_OK


# -- grade --------------------------------------------------------------------


def cmd_grade(args) -> int:
    try:
        config = grader.PatternConfig.load(args.patterns)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load patterns: {exc}") from exc
    try:
        lines = Path(args.transcripts).read_text("utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {args.transcripts}: {exc}") from exc

    transcripts, skipped = [], 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            transcripts.append(grader.Transcript.from_dict(json.loads(line)))
        except (json.JSONDecodeError, PuzzleEvalError) as exc:
            skipped += 1
            print(f"{args.transcripts}:{lineno}: skipped: {exc}", file=sys.stderr)

    reports, _ = grader.grade_batch(transcripts, config, jobs=args.jobs)
    summary = grader.summarize(reports, skipped=skipped)
    atomic_write(args.report, "".join(json.dumps(r.to_dict()) + "\n" for r in reports))
    summary_path = args.summary or f"{args.report}.summary.json"
    atomic_write(summary_path, json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary, indent=2))
    return EXIT_OK


# -- feasibility sweep ----------------------------------------------------------


def _int_range(raw: str) -> list[int]:
    out: list[int] = []
    for part in raw.split(","):
        lo, sep, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad range {raw!r}") from exc
    return out


def feasibility_sweep(pairs: Sequence[int], capacities: Sequence[int]) -> list[dict]:
    rows = []
    for b in capacities:
        for n in pairs:
            inst = river.RiverInstance(n, b)
            start = time.perf_counter()
            try:
                result = river.solve_bfs(inst)
            except ResourceLimit:
                rows.append({"n_pairs": n, "capacity": b, "verdict": "RESOURCE_LIMIT"})
                continue
            row = {
                "n_pairs": n,
                "capacity": b,
                "verdict": "SOLVABLE" if result.solvable else "UNSOLVABLE",
                "min_crossings": result.min_crossings,
                "states_explored": result.states_explored,
            }
            if result.solvable:
                outcome = river.verify(inst, result.witness)
                row["witness_verified"] = (
                    outcome.correct and outcome.moves_checked == result.min_crossings
                )
                row["witness"] = [list(m) for m in result.witness]
            row["seconds"] = round(time.perf_counter() - start, 3)
            rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    rows = feasibility_sweep(args.pairs, args.capacities)
    print(f"{'N':>3} {'b':>3}  {'verdict':<14} {'min_crossings':>13} {'states':>8}")
    for r in rows:
        mc = r.get("min_crossings")
        print(
            f"{r['n_pairs']:>3} {r['capacity']:>3}  {r['verdict']:<14} "
            f"{'-' if mc is None else mc:>13} {r.get('states_explored', '-'):>8}"
        )
    if args.output:
        stable = [{k: v for k, v in r.items() if k != "seconds"} for r in rows]
        atomic_write(args.output, json.dumps(stable, indent=2) + "\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("puzzle", choices=["hanoi", "river", "blocks"])
    p.add_argument("--n", type=int, help="hanoi: number of disks")
    p.add_argument("--pairs", type=int, help="river: number of actor/agent pairs")
    p.add_argument("--capacity", type=int, help="river: boat capacity")
    p.add_argument("--initial", help='blocks: JSON stacks, e.g. [["A","B"],["C"]]')
    p.add_argument("--goal", help="blocks: JSON stacks")
    p.add_argument("--max-blocks", type=int, default=blocks.DEFAULT_MAX_BLOCKS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="puzzle-eval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and write its move list")
    _add_instance_flags(p)
    p.add_argument("--optimal", action="store_true", help="blocks: exhaustive optimal plan")
    p.add_argument("--output", help="write moves here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="verify a move list file")
    _add_instance_flags(p)
    p.add_argument("--moves", required=True, help="JSON move list file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("budget", help="token budget table")
    p.add_argument("--l-max", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in budget.GrowthMode], default="linear")
    p.add_argument("--tokens-per-move", type=float, default=budget.DEFAULT_TOKENS_PER_MOVE)
    p.add_argument("--overhead", type=float, default=0)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("grade", help="grade a JSONL file of transcripts")
    p.add_argument("--transcripts", required=True)
    p.add_argument("--report", required=True, help="output JSONL of grade reports")
    p.add_argument("--summary", help="summary JSON path (default: REPORT.summary.json)")
    p.add_argument("--patterns", help="pattern config JSON (default: bundled)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("feasibility-sweep", help="tabulate river solvability over an N x b grid")
    p.add_argument("--pairs", type=_int_range, default=_int_range("2-10"))
    p.add_argument("--capacities", type=_int_range, default=_int_range("2,3,4"))
    p.add_argument("--output", help="write rows (with witnesses) as JSON")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, PuzzleEvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
