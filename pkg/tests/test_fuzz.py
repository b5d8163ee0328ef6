"""Random program generation and differential checking."""

import random

from aspcert.core import RuleKind
from aspcert.fuzz import differential_run, random_program, random_tight_program
from aspcert.loops import has_loops
from aspcert.program_io import emit_program


def test_random_program_is_seed_deterministic():
    first = [emit_program(random_program(random.Random(5))) for _ in range(20)]
    second = [emit_program(random_program(random.Random(5))) for _ in range(20)]
    assert first == second


def test_random_program_respects_bounds():
    rng = random.Random(1)
    for _ in range(200):
        program = random_program(rng, max_atoms=6, max_rules=10)
        assert 1 <= program.atom_count <= 6
        assert 1 <= len(program.rules) <= 10
        for rule in program.rules:
            assert rule.kind is RuleKind.BASIC
            assert len(rule.head) == 1
            assert len(rule.pos_body) + len(rule.neg_body) <= 3
            assert not rule.pos_body & rule.neg_body


def test_random_tight_program_has_no_loops():
    rng = random.Random(2)
    for _ in range(100):
        assert not has_loops(random_tight_program(rng))


def test_differential_run_is_clean_and_deterministic():
    assert differential_run(60, seed=4) == []
    assert differential_run(60, seed=4) == differential_run(60, seed=4)


def test_differential_run_reports_nothing_on_zero_instances():
    assert differential_run(0) == []
