"""Unit propagation, RUP checks, and the weight-rule propagator."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from aspcert.core import weight_rule
from aspcert.oracle import entails
from aspcert.propagation import (
    WeightRulePropagator,
    is_rup,
    rup_run,
    unit_propagate,
    weight_propagate,
)


def test_unit_propagate_chain():
    result = unit_propagate([frozenset({1, -2}), frozenset({2})])
    assert not result.is_conflict
    assert result.derived == (-2, -1)
    assert result.assignment == frozenset({-2, -1})


def test_unit_propagate_conflict():
    result = unit_propagate([frozenset({1}), frozenset({-1})])
    assert result.is_conflict
    assert result.conflict in {frozenset({1}), frozenset({-1})}


def test_unit_propagate_assumption_contradiction():
    result = unit_propagate([], assumptions=(2, -2))
    assert result.is_conflict


def test_unit_propagate_stable_under_no_units():
    result = unit_propagate([frozenset({1, 2})], assumptions=(-3,))
    assert not result.is_conflict
    assert result.derived == ()
    assert result.assignment == frozenset({-3})


def test_rup_member_nogood():
    nogoods = [frozenset({1, -2}), frozenset({2, 3})]
    assert is_rup(nogoods, frozenset({1, -2}))
    assert rup_run(nogoods, frozenset({1, -2})).is_conflict


def test_rup_fresh_variable_is_not_rup():
    assert not is_rup([], frozenset({7}))


def test_rup_resolvent():
    nogoods = [frozenset({1, 2}), frozenset({1, -2})]
    assert is_rup(nogoods, frozenset({1}))
    assert not is_rup(nogoods, frozenset({-1}))


nogood_sets = st.lists(
    st.frozensets(
        st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0),
        min_size=1,
        max_size=3,
    ).filter(lambda s: not any(-l in s for l in s)),
    max_size=6,
)


@settings(max_examples=200, deadline=None)
@given(nogood_sets, nogood_sets)
def test_rup_monotone_under_added_nogoods(base, extra):
    delta = frozenset({1, -2})
    if is_rup(base, delta):
        assert is_rup(base + extra, delta)


@settings(max_examples=200, deadline=None)
@given(nogood_sets, st.integers(min_value=0, max_value=2**32 - 1))
def test_unit_propagate_order_independent(nogoods, seed):
    baseline = unit_propagate(nogoods)
    shuffled = list(nogoods)
    random.Random(seed).shuffle(shuffled)
    other = unit_propagate(shuffled)
    assert baseline.is_conflict == other.is_conflict
    if not baseline.is_conflict:
        assert baseline.assignment == other.assignment


@settings(max_examples=200, deadline=None)
@given(
    nogood_sets,
    st.frozensets(
        st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0),
        min_size=1,
        max_size=3,
    ).filter(lambda s: not any(-l in s for l in s)),
)
def test_rup_additions_are_entailed(nogoods, delta):
    if is_rup(nogoods, delta):
        assert entails(nogoods, [delta])


def test_weight_propagate_head_from_satisfied_body():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    conflict, derivations = weight_propagate(rule, frozenset({-4}))
    assert conflict is None
    assert [lit for lit, _ in derivations] == [1]
    literal, reason = derivations[0]
    assert -literal in reason and reason <= frozenset({-4, -1})


def test_weight_propagate_body_literal_from_false_head():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    conflict, derivations = weight_propagate(rule, frozenset({-1, 4, 2}))
    assert conflict is None
    assert [lit for lit, _ in derivations] == [-3]


def test_weight_propagate_quiet_on_empty_assignment():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    assert weight_propagate(rule, frozenset()) == (None, [])


def test_weight_propagate_conflict():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    conflict, _ = weight_propagate(rule, frozenset({-1, -4}))
    assert conflict is not None
    assert conflict <= frozenset({-1, -4})


def test_weight_propagator_plugs_into_unit_propagate():
    rule = weight_rule(1, 2, {2: 1, 3: 1, -4: 2})
    propagator = WeightRulePropagator(rule)
    result = unit_propagate([], assumptions=(-4,), propagators=(propagator,))
    assert not result.is_conflict
    assert 1 in result.assignment
