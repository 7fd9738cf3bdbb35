import json

import pytest
from hypothesis import given, strategies as st

from puzzle_eval import blocks, hanoi, river
from puzzle_eval.errors import InstanceMismatch
from puzzle_eval.grader import (
    Classification,
    PatternConfig,
    Puzzle,
    Transcript,
    default_config,
    detect_impossibility_claim,
    extract_moves,
    grade,
    grade_batch,
    render_moves,
)

C = Classification
QUOTE = "The pattern continues, but to avoid making this too long, I'll stop here"


def hanoi_t(text, n=3, tid="t"):
    return Transcript(tid, Puzzle.HANOI, {"n": n}, text)


def test_extract_examples():
    assert extract_moves("moves = [[1,0,2],[2,0,1]]", "hanoi") == ([(1, 0, 2), (2, 0, 1)], False)
    moves, trunc = extract_moves(
        "[[1,0,2],[2,0,1], ... the pattern continues, but to avoid making this too long, "
        "I'll stop here",
        "hanoi",
    )
    assert moves == [(1, 0, 2), (2, 0, 1)] and trunc
    assert extract_moves("I believe this puzzle has no solution.", "hanoi") == ([], False)


def test_extract_last_list_wins():
    text = "First try: [[1,0,1]]. Corrected answer:\n[[1, 0, 2]]"
    assert extract_moves(text, "hanoi") == ([(1, 0, 2)], False)


def test_extract_structural_truncation():
    assert extract_moves("[[1,0,2],[2,0,1]", "hanoi") == ([(1, 0, 2), (2, 0, 1)], True)
    assert extract_moves("[[1,0,2],[2,0,1], ...]", "hanoi")[1]
    assert extract_moves("[[1,0,2], …", "hanoi")[1]


def test_extract_other_formats():
    moves, _ = extract_moves("""[['a1', 'A1'], ["A1"]]""", "river")
    assert moves == [("a1", "A1"), ("A1",)]
    moves, _ = extract_moves('[["B", "Table"], ["A","B"]]', "blocks")
    assert moves == [("B", blocks.TABLE), ("A", "B")]


def test_extract_one_indexed_pegs():
    base = default_config()
    cfg = PatternConfig(base.truncation, base.impossibility, hanoi_peg_base=1)
    assert extract_moves("[[1,1,3]]", "hanoi", cfg)[0] == [(1, 0, 2)]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_roundtrip_hanoi(n):
    moves = hanoi.solve(n)
    assert extract_moves(render_moves(moves), "hanoi") == (moves, False)


@pytest.mark.parametrize("n,b", [(1, 2), (2, 2), (3, 2), (5, 3), (6, 4)])
def test_roundtrip_river(n, b):
    witness = list(river.solve_bfs(river.RiverInstance(n, b)).witness)
    assert extract_moves(render_moves(witness), "river") == (witness, False)


@given(st.data())
def test_roundtrip_blocks(data):
    labels = data.draw(st.lists(st.sampled_from("ABCDEFG"), min_size=1, max_size=7, unique=True))
    goal_order = data.draw(st.permutations(labels))
    init = blocks.BlocksState.of([labels])
    half = len(labels) // 2
    goal = blocks.BlocksState.of([s for s in (goal_order[:half], goal_order[half:]) if s])
    plan = list(blocks.near_optimal_plan(init, goal).moves)
    moves, trunc = extract_moves(render_moves(plan), "blocks")
    assert not trunc and moves == plan


def test_impossibility_examples():
    assert detect_impossibility_claim(
        "Therefore the puzzle is unsolvable for 6 pairs with capacity 3."
    )
    assert not detect_impossibility_claim(
        "Some think it impossible, but here is the solution: [[1,0,2],[2,0,1],[1,2,1]]"
    )
    assert not detect_impossibility_claim("")


def test_impossibility_position_heuristic():
    early = "This is not impossible. " + "Move the small disk first and keep going. " * 10
    assert not detect_impossibility_claim(early)
    assert detect_impossibility_claim(early + "In the end I conclude there is no solution")


def test_grade_examples():
    r = grade(hanoi_t(f"moves = {render_moves(hanoi.solve(3))}"))
    assert r.classification is C.CORRECT and r.optimal is True

    r = grade(Transcript("r", Puzzle.RIVER, {"n_pairs": 6, "capacity": 3},
                         "After checking, no schedule works: the puzzle is unsolvable."))
    assert r.classification is C.CLAIMED_IMPOSSIBLE and r.detail == {"justified": True}

    first100 = ", ".join(json.dumps(list(m)) for m in hanoi.solve(10)[:100])
    r = grade(hanoi_t(f"[{first100}, and so on. I'll stop here.", n=10))
    assert r.classification is C.TRUNCATED_VALID_PREFIX and r.detail == {"prefix": 100}
    assert r.truncation_phrase_detected


def test_grade_parse_failure_and_silent_prefix():
    assert grade(hanoi_t("no list here")).classification is C.PARSE_FAILURE
    r = grade(hanoi_t("[[1,0,2]]"))
    assert r.classification is C.TRUNCATED_VALID_PREFIX and not r.truncation_phrase_detected


def test_correct_list_dominates_hedging():
    text = f"{render_moves(hanoi.solve(2))}\nThough honestly I thought it was impossible."
    assert detect_impossibility_claim(text)
    assert grade(hanoi_t(text, n=2)).classification is C.CORRECT


def test_river_suboptimal_detected():
    witness = list(river.solve_bfs(river.RiverInstance(2, 2)).witness)
    detour = witness[:1] + [["a1"], ["a1"]] + witness[1:]
    r = grade(Transcript("x", Puzzle.RIVER, {"n_pairs": 2, "capacity": 2}, render_moves(detour)))
    assert r.classification is C.CORRECT_SUBOPTIMAL and r.optimal is False


def test_grade_rejects_bad_params():
    with pytest.raises(InstanceMismatch):
        grade(Transcript("x", Puzzle.HANOI, {"n": 0}, ""))
    with pytest.raises(InstanceMismatch):
        grade(Transcript("x", Puzzle.RIVER, {"n_pairs": 3, "capacity": 1}, ""))
    with pytest.raises(InstanceMismatch):
        grade(Transcript("x", Puzzle.BLOCKS, {"initial": [["A"]], "goal": [["B"]]}, ""))


def test_grade_deterministic(fixture_rows):
    ts = [Transcript.from_dict(r) for r in fixture_rows]
    assert [grade(t) for t in ts] == [grade(t) for t in ts]


def test_fixture_labels(fixture_rows):
    for row in fixture_rows:
        r = grade(Transcript.from_dict(row))
        assert r.classification.value == row["expected"], row["id"]
        if "expected_optimal" in row:
            assert r.optimal is row["expected_optimal"], row["id"]
        if "expected_justified" in row:
            assert r.detail["justified"] is row["expected_justified"], row["id"]
        if "expected_prefix" in row:
            assert r.detail["prefix"] == row["expected_prefix"], row["id"]
        if "expected_index" in row:
            assert r.detail["index"] == row["expected_index"], row["id"]
            assert r.detail["reason"] == row["expected_reason"], row["id"]


def test_batch_empty():
    reports, summary = grade_batch([])
    assert reports == []
    assert summary["total"] == 0 and summary["misclassification_fraction"] == 0.0
    assert all(v == 0 for v in summary["by_classification"].values())


def test_batch_misclassification_fraction():
    ts = [
        hanoi_t(render_moves(hanoi.solve(3)), tid="ok"),
        Transcript("imp", Puzzle.RIVER, {"n_pairs": 6, "capacity": 3}, "It is impossible."),
        hanoi_t("[[2,0,2]]", tid="bad"),
    ]
    reports, summary = grade_batch(ts)
    assert [r.classification for r in reports] == [C.CORRECT, C.CLAIMED_IMPOSSIBLE, C.INVALID_MOVE]
    assert summary["misclassification_fraction"] == pytest.approx(1 / 3)
    assert summary["binary_failures"] == 2


def test_batch_duplicates_and_errors(caplog):
    ts = [hanoi_t("[[1,0,2]]", n=1, tid="d"), hanoi_t("[[1,0,2]]", n=1, tid="d"),
          Transcript("e", Puzzle.HANOI, {"n": -1}, "")]
    reports, summary = grade_batch(ts)
    assert len(reports) == 3
    assert summary["duplicate_ids"] == ["d"]
    assert reports[2].error and summary["errors"] == 1
    assert "duplicate" in caplog.text


def test_batch_parallel_preserves_order(fixture_rows):
    ts = [Transcript.from_dict(r) for r in fixture_rows]
    serial, s1 = grade_batch(ts)
    parallel, s2 = grade_batch(ts, jobs=4)
    assert serial == parallel and s1 == s2


def test_report_schema():
    d = grade(hanoi_t("[[1,0,2]]", n=1)).to_dict()
    assert d["schema_version"] == 1
    assert set(d) == {"schema_version", "id", "puzzle", "classification", "moves_found",
                      "truncation_phrase_detected", "optimal", "detail", "error"}
    json.dumps(d)


def test_custom_patterns_change_grading(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"truncation": ["and so forth"], "impossibility": []}))
    cfg = PatternConfig.load(path)
    r = grade(hanoi_t("[[1,0,2]] and so forth"), cfg)
    assert r.truncation_phrase_detected
    r = grade(Transcript("x", Puzzle.RIVER, {"n_pairs": 6, "capacity": 3}, "impossible"), cfg)
    assert r.classification is C.PARSE_FAILURE
