"""Proof text parsing, serialization, and body declaration."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspcert.completion import BodyRegistry, body_catalog
from aspcert.proof import (
    Proof,
    ProofSyntaxError,
    Step,
    declare_bodies,
    parse_proof,
    serialize_proof,
    serialize_step,
    sorted_lits,
)


def test_parse_step_kinds():
    proof = parse_proof(
        "b 12 -1 -5 0\n"
        "s 1 10 6 0\n"
        "c 8 3 0\n"
        "l 1 2 0\n"
        "a -6 1 0\n"
        "e 14 0\n"
        "d -6 1 0\n"
        "u 2 1 2 1 -6 0\n"
        "a 0\n"
    )
    assert proof.steps == (
        Step("b", head=12, lits=(-1, -5)),
        Step("s", head=1, lits=(10, 6)),
        Step("c", head=8, lits=(3,)),
        Step("l", lits=(1, 2)),
        Step("a", lits=(-6, 1)),
        Step("e", head=14),
        Step("d", lits=(-6, 1)),
        Step("u", lits=(1, -6), unfounded=(1, 2)),
        Step("a"),
    )


def test_parse_preserves_literal_order():
    step = parse_proof("a -6 1 0\n").steps[0]
    assert step.lits == (-6, 1)
    assert step.lits != sorted_lits(step.lits)


def test_sorted_lits_order():
    assert sorted_lits((1, -6, 6, -1)) == (1, -1, 6, -6)
    assert sorted_lits(()) == ()


def test_serialize_frozen_lines():
    assert serialize_step(Step("s", head=1, lits=(10, 6))) == "s 1 10 6 0"
    assert serialize_step(Step("b", head=12, lits=(-1, -5))) == "b 12 -1 -5 0"
    assert serialize_step(Step("a")) == "a 0"
    assert serialize_step(Step("e", head=14)) == "e 14 0"
    assert serialize_step(Step("u", lits=(1, -6), unfounded=(1, 2))) == "u 2 1 2 1 -6 0"


def test_figure_proof_roundtrip_is_byte_identical(fig1_text):
    assert serialize_proof(parse_proof(fig1_text)) == fig1_text


def test_parse_skips_blank_lines():
    assert parse_proof("\n\na 0\n\n").steps == (Step("a"),)


@pytest.mark.parametrize(
    "text",
    [
        "a -6 1",        # missing terminator
        "a 0 0",         # stray zero
        "q 1 0",         # unknown kind
        "c 8 0",         # c without an atom
        "c -8 3 0",      # negative body id
        "s 0",           # s without an atom
        "s -1 0",        # negative atom
        "e 0",           # e without a variable
        "e 3 4 0",       # e with extra payload
        "b 0",           # b without a variable
        "l 0",           # empty loop
        "l 1 1 0",       # repeated loop atom
        "u 1 0",         # count exceeds payload
        "u 2 1 1 0",     # repeated unfounded atom
        "a x 0",         # non-integer token
    ],
)
def test_parse_rejects_malformed_lines(text):
    with pytest.raises(ProofSyntaxError):
        parse_proof(text + "\n")


def test_parse_reports_line_numbers():
    with pytest.raises(ProofSyntaxError, match="line 2"):
        parse_proof("a 0\nq 1 0\n")


step_strategy = st.one_of(
    st.builds(
        Step,
        st.just("a"),
        lits=st.tuples() | st.tuples(st.sampled_from([-9, -2, 1, 5])),
    ),
    st.builds(Step, st.just("e"), head=st.integers(min_value=1, max_value=99)),
    st.builds(
        Step,
        st.just("s"),
        head=st.integers(min_value=1, max_value=9),
        lits=st.tuples(st.integers(min_value=10, max_value=20)),
    ),
    st.builds(
        Step,
        st.just("l"),
        lits=st.sampled_from([(1,), (1, 2), (3, 5, 7)]),
    ),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(step_strategy, max_size=8))
def test_step_roundtrip(steps):
    proof = Proof(tuple(steps))
    assert parse_proof(serialize_proof(proof)) == proof


def _fig1_registry(program, fig1_text):
    registry = BodyRegistry(program.atom_count)
    for step in parse_proof(fig1_text):
        if step.kind == "b":
            registry.declare(step.head, frozenset(step.lits))
    return registry


def test_declare_bodies_prepends_missing_declarations(ex1_program, fig1_text):
    full = parse_proof(fig1_text)
    bare = Proof(tuple(s for s in full if s.kind != "b"))
    catalog = body_catalog(ex1_program)
    registry = _fig1_registry(ex1_program, fig1_text)
    assert declare_bodies(bare, ex1_program, catalog, registry) == full


def test_declare_bodies_keeps_complete_proofs(ex1_program, fig1_text):
    full = parse_proof(fig1_text)
    catalog = body_catalog(ex1_program)
    registry = _fig1_registry(ex1_program, fig1_text)
    assert declare_bodies(full, ex1_program, catalog, registry) == full


def test_declare_bodies_requires_known_ids(ex1_program):
    proof = parse_proof("c 99 1 0\na 0\n")
    catalog = body_catalog(ex1_program)
    registry = BodyRegistry(ex1_program.atom_count)
    with pytest.raises(KeyError):
        declare_bodies(proof, ex1_program, catalog, registry)
