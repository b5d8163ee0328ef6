"""Conflict-driven solving with proof logging."""

import io
import random

import pytest

import aspcert.solver as solver_module
from aspcert.checker import check
from aspcert.fuzz import random_program
from aspcert.oracle import enumerate_answer_sets, is_answer_set
from aspcert.proof import serialize_proof
from aspcert.program_io import parse_program
from aspcert.solver import (
    CONSISTENT,
    HEURISTICS,
    INCONSISTENT,
    UNKNOWN,
    SolveError,
    solve,
)


def test_consistent_program():
    result = solve(parse_program("a :- not b.\n"))
    assert result.status == CONSISTENT
    assert result.answer_set == frozenset({1})
    assert result.proof is None


def test_empty_program_has_empty_answer_set():
    result = solve(parse_program(""))
    assert result.status == CONSISTENT
    assert result.answer_set == frozenset()


def test_inconsistent_program_yields_checkable_proof(ex1_program):
    result = solve(ex1_program)
    assert result.status == INCONSISTENT
    assert result.answer_set is None
    assert result.proof.steps[-1].lits == ()
    assert check(ex1_program, result.proof).ok


def test_constraint_only_inconsistency():
    program = parse_program("a.\n:- a.\n")
    result = solve(program)
    assert result.status == INCONSISTENT
    assert check(program, result.proof).ok


def test_weight_rules_solve():
    program = parse_program("b.\nc.\na :- 2 <= {b=1, c=1, d=2}.\n")
    result = solve(program)
    assert result.status == CONSISTENT
    assert result.answer_set == frozenset({1, 2, 3})


def test_choice_rules_solve():
    program = parse_program("{a}.\n:- not a.\n")
    result = solve(program)
    assert result.status == CONSISTENT
    assert result.answer_set == frozenset({1})


def test_heuristics_agree_on_verdict():
    rng = random.Random(7)
    for _ in range(40):
        program = random_program(rng)
        verdicts = {solve(program, heuristic=h).status for h in HEURISTICS}
        assert len(verdicts) == 1


def test_random_heuristic_is_seed_deterministic(ex1_program):
    first = solve(ex1_program, heuristic="random", seed=11)
    second = solve(ex1_program, heuristic="random", seed=11)
    assert serialize_proof(first.proof) == serialize_proof(second.proof)


def test_proof_sink_streams_serialized_steps(ex1_program):
    sink = io.StringIO()
    result = solve(ex1_program, proof_sink=sink)
    assert sink.getvalue() == serialize_proof(result.proof)


def test_verdicts_and_witnesses_match_oracle():
    rng = random.Random(3)
    for _ in range(120):
        program = random_program(rng)
        result = solve(program)
        models = enumerate_answer_sets(program, cap=1)
        if result.status == CONSISTENT:
            assert models
            assert is_answer_set(program, result.answer_set)
        else:
            assert result.status == INCONSISTENT
            assert models == []
            assert check(program, result.proof).ok


def test_restarts_preserve_verdicts_and_proofs(monkeypatch):
    monkeypatch.setattr(solver_module, "RESTART_INTERVAL", 2)
    rng = random.Random(19)
    restarted = 0
    for _ in range(80):
        program = random_program(rng, max_atoms=7, max_rules=14)
        result = solve(program, restarts=True)
        baseline = solve(program)
        assert result.status == baseline.status
        if result.status == INCONSISTENT:
            assert check(program, result.proof).ok
            if any(step.kind == "d" for step in result.proof):
                restarted += 1
    assert restarted > 0


def test_rejects_disjunctive_programs():
    with pytest.raises(SolveError, match="disjunctive"):
        solve(parse_program("a | b.\n"))


def test_rejects_recursive_weight_rules():
    with pytest.raises(SolveError, match="recursive weight"):
        solve(parse_program("a :- 1 <= {b=1}.\nb :- a.\n"))


def test_rejects_unknown_heuristic():
    with pytest.raises(SolveError, match="heuristic"):
        solve(parse_program("a.\n"), heuristic="bogus")


def test_unknown_when_expansion_exceeds_budget():
    result = solve(parse_program("a :- 2 <= {b=1, c=1, d=1}.\n"), budget=2)
    assert result.status == UNKNOWN
    assert "budget" in result.reason
    assert result.proof is None and result.answer_set is None
