"""Induced bodies, completion nogood families, and normalization."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspcert.completion import (
    BodyRegistry,
    BudgetError,
    backward_family,
    backward_nogood,
    body_catalog,
    body_definition,
    forward_family,
    forward_nogood,
    induced_bodies_of_rule,
    is_short_body_form,
    minimal_weight_sets,
    normalize_short_body,
)
from aspcert.core import basic_rule, choice_rule, weight_rule
from aspcert.fuzz import random_program
from aspcert.oracle import enumerate_answer_sets
from aspcert.program_io import emit_program, parse_program


def test_induced_bodies_basic_rule():
    rule = basic_rule((1,), pos=(2, 4))
    assert induced_bodies_of_rule(rule, 1) == [frozenset({2, 4})]


def test_induced_bodies_disjunctive_shifts_other_heads():
    rule = basic_rule((1, 2), pos=(3,))
    assert induced_bodies_of_rule(rule, 1) == [frozenset({3, -2})]
    assert induced_bodies_of_rule(rule, 2) == [frozenset({3, -1})]


def test_induced_bodies_weight_rule():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    got = set(induced_bodies_of_rule(rule, 1))
    assert got == {frozenset({2, 3}), frozenset({-4})}


def test_induced_bodies_choice_rule():
    rule = choice_rule((1, 2), pos=(3,), neg=(4,))
    assert induced_bodies_of_rule(rule, 1) == [frozenset({3, -4})]


def test_induced_bodies_rejects_non_head_atom():
    with pytest.raises(ValueError):
        induced_bodies_of_rule(basic_rule((1,)), 2)


def _brute_minimal(weights, bound):
    lits = list(weights)
    reaching = [
        frozenset(combo)
        for r in range(len(lits) + 1)
        for combo in combinations(lits, r)
        if sum(weights[l] for l in combo) >= bound
    ]
    return {s for s in reaching if not any(t < s for t in reaching)}


weight_maps = st.dictionaries(
    st.integers(min_value=-6, max_value=6).filter(lambda x: x != 0),
    st.integers(min_value=1, max_value=5),
    min_size=0,
    max_size=6,
).filter(lambda d: not any(-k in d for k in d))


@settings(max_examples=300, deadline=None)
@given(weight_maps, st.integers(min_value=0, max_value=20))
def test_minimal_weight_sets_match_brute_force(weights, bound):
    got = minimal_weight_sets(weights, bound)
    assert set(got) == _brute_minimal(weights, bound)
    assert len(set(got)) == len(got)


def test_minimal_weight_sets_budget():
    weights = {i: 1 for i in range(1, 13)}
    with pytest.raises(BudgetError):
        minimal_weight_sets(weights, 6, budget=10)


def test_body_definition_examples():
    assert body_definition(6, frozenset({3})) == (
        frozenset({-6, 3}),
        frozenset({6, -3}),
    )
    assert body_definition(9, frozenset()) == (frozenset({-9}),)
    assert body_definition(10, frozenset({2, 4})) == (
        frozenset({-10, 2, 4}),
        frozenset({10, -2}),
        frozenset({10, -4}),
    )


def test_forward_and_backward_nogood_shapes():
    assert forward_nogood(1, (10, 6)) == frozenset({1, -10, -6})
    assert forward_nogood(3, ()) == frozenset({3})
    assert backward_nogood(3, 8) == frozenset({-3, 8})


def test_catalog_on_example(ex1_program):
    catalog = body_catalog(ex1_program)
    assert catalog.bodies_of(1) == (frozenset({2, 4}), frozenset({3}))
    assert catalog.bodies_of(5) == (frozenset({3, -5}), frozenset({-1, -5}))
    # first-occurrence interning order over the eight rule bodies
    assert catalog.order == (
        frozenset({2, 4}),
        frozenset({1, 4}),
        frozenset({3}),
        frozenset({3, 4}),
        frozenset({-4}),
        frozenset({-3}),
        frozenset({3, -5}),
        frozenset({-1, -5}),
    )


def test_families_on_example(ex1_program):
    catalog = body_catalog(ex1_program)
    registry = BodyRegistry(ex1_program.atom_count)
    for body in catalog.order:
        registry.intern(body)
    forwards = {atom: nogood for atom, _, nogood in forward_family(ex1_program, catalog, registry)}
    bid = registry.id_of
    assert forwards[1] == frozenset({1, -bid(frozenset({2, 4})), -bid(frozenset({3}))})
    assert forwards[5] == frozenset(
        {5, -bid(frozenset({3, -5})), -bid(frozenset({-1, -5}))}
    )
    backwards = set(backward_family(ex1_program, catalog, registry))
    assert frozenset({-3, bid(frozenset({-4}))}) in backwards
    assert frozenset({-1, bid(frozenset({2, 4}))}) in backwards
    assert len(backwards) == 8


def test_choice_rules_have_no_backward_but_do_support():
    program = parse_program("{a} :- c.")
    catalog = body_catalog(program)
    registry = BodyRegistry(program.atom_count)
    for body in catalog.order:
        registry.intern(body)
    assert backward_family(program, catalog, registry) == []
    forwards = {atom: nogood for atom, _, nogood in forward_family(program, catalog, registry)}
    assert forwards[1] == frozenset({1, -registry.id_of(frozenset({2}))})


def test_catalog_budget_deferral():
    program = parse_program("a :- 6 <= {b=1,c=1,d=1,e=1,f=1,g=1,h=1,i=1,j=1,k=1,l=1,m=1}.")
    catalog = body_catalog(program, budget=10, defer_over_budget=True)
    assert len(catalog.deferred) == 1
    assert catalog.bodies_of(1) == ()
    with pytest.raises(BudgetError):
        body_catalog(program, budget=10)


def test_registry_declare_and_intern():
    registry = BodyRegistry(5)
    registry.declare(6, frozenset({2, 4}))
    assert registry.id_of(frozenset({2, 4})) == 6
    assert registry.lits_of(6) == frozenset({2, 4})
    with pytest.raises(ValueError):
        registry.declare(6, frozenset({3}))          # id reuse
    with pytest.raises(ValueError):
        registry.declare(8, frozenset({2, 4}))       # set reuse
    with pytest.raises(ValueError):
        registry.declare(3, frozenset({1}))          # collides with atoms
    assert registry.intern(frozenset({-1})) == 7
    assert registry.intern(frozenset({-1})) == 7
    internal = registry.intern_internal(frozenset({1, 2}))
    assert internal >= 1 << 40


def test_normalize_short_body_example():
    program = parse_program("a :- b, d.\na :- c.")
    normalized = normalize_short_body(program)
    assert emit_program(normalized) == (
        "#atoms a b d c __aux1.\n"
        "__aux1 :- b, d.\n"
        "a :- __aux1.\n"
        "a :- c.\n"
    )
    assert is_short_body_form(normalized)


def test_normalize_single_body_unchanged():
    program = parse_program("a :- b, not c.")
    assert normalize_short_body(program) == program
    assert is_short_body_form(program)


def test_normalize_rejects_non_normal():
    with pytest.raises(ValueError):
        normalize_short_body(parse_program("{a} :- b."))
    with pytest.raises(ValueError):
        normalize_short_body(parse_program("a | b."))


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_normalize_preserves_answer_sets(seed):
    program = random_program(random.Random(seed))
    normalized = normalize_short_body(program)
    assert is_short_body_form(normalized)
    count = program.atom_count
    original = {frozenset(m) for m in enumerate_answer_sets(program)}
    projected = {
        frozenset(a for a in m if a <= count)
        for m in enumerate_answer_sets(normalized)
    }
    assert original == projected


@settings(max_examples=150, deadline=None)
@given(weight_maps, st.integers(min_value=0, max_value=12))
def test_weight_bodies_pairwise_non_subset(weights, bound):
    rule_sets = minimal_weight_sets(weights, bound)
    for left in rule_sets:
        for right in rule_sets:
            assert not left < right
