"""Seeded random normal programs and the solver/oracle differential loop.

The generator draws uniform random normal programs: a random atom and rule
count up to the configured maxima, bodies of up to three distinct atoms,
each negated with probability one half. Every instance is reproducible from
the top-level seed. The differential loop cross-checks three things per
instance: the solver's verdict against brute-force enumeration, every
inconsistency proof against the checker, and every reported answer set
against the stability test.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass

from .checker import check
from .core import Program, Rule, basic_rule
from .loops import has_loops
from .oracle import enumerate_answer_sets, is_answer_set
from .program_io import emit_program
from .solver import CONSISTENT, HEURISTICS, INCONSISTENT, solve


@dataclass(frozen=True)
class Discrepancy:
    index: int
    program_text: str
    detail: str


def _atom_names(count: int) -> tuple[str, ...]:
    letters = string.ascii_lowercase
    if count <= len(letters):
        return tuple(letters[:count])
    return tuple(f"x{i}" for i in range(1, count + 1))


def random_program(
    rng: random.Random, *, max_atoms: int = 6, max_rules: int = 10
) -> Program:
    """One uniform random normal program over a random-size atom table."""
    atom_count = rng.randint(1, max_atoms)
    rule_count = rng.randint(1, max_rules)
    rules: list[Rule] = []
    for _ in range(rule_count):
        head = rng.randint(1, atom_count)
        size = rng.randint(0, min(3, atom_count))
        chosen = rng.sample(range(1, atom_count + 1), size)
        neg = frozenset(a for a in chosen if rng.random() < 0.5)
        pos = frozenset(a for a in chosen if a not in neg)
        rules.append(basic_rule((head,), pos, neg))
    return Program(_atom_names(atom_count), tuple(rules))


def random_tight_program(
    rng: random.Random, *, max_atoms: int = 6, max_rules: int = 10
) -> Program:
    """Rejection-sample random_program until the dependency digraph is acyclic."""
    while True:
        program = random_program(rng, max_atoms=max_atoms, max_rules=max_rules)
        if not has_loops(program):
            return program


def differential_run(
    count: int,
    *,
    max_atoms: int = 6,
    max_rules: int = 10,
    seed: int = 0,
) -> list[Discrepancy]:
    """Cross-check solver, checker, and oracle on `count` random instances."""
    rng = random.Random(seed)
    found: list[Discrepancy] = []

    def report(index: int, program: Program, detail: str) -> None:
        found.append(Discrepancy(index, emit_program(program), detail))

    for index in range(count):
        program = random_program(rng, max_atoms=max_atoms, max_rules=max_rules)
        heuristic = HEURISTICS[index % len(HEURISTICS)]
        result = solve(program, heuristic=heuristic, seed=index)
        has_model = bool(enumerate_answer_sets(program, cap=1))
        expected = CONSISTENT if has_model else INCONSISTENT
        if result.status != expected:
            report(index, program, f"solver said {result.status}, oracle says {expected}")
            continue
        if result.status == INCONSISTENT:
            verdict = check(program, result.proof)
            if not verdict:
                report(index, program, f"proof rejected: {verdict.render()}")
        else:
            if not is_answer_set(program, result.answer_set):
                atoms = sorted(program.name(a) for a in result.answer_set)
                report(index, program, f"unstable answer set {{{', '.join(atoms)}}}")
    return found
