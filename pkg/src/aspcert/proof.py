"""Inconsistency proof format: steps, text parsing, and serialization.

One step per line, integer tokens, each line closed by 0. Signed variables
write true as +id and false as -id. Line forms:

    a <tv>... 0          add a nogood with the reverse-unit-propagation property
    c <body> <atom>... 0 add the rule-firing nogood {F atoms..., T body}
    s <atom> <body>... 0 add the support nogood {T atom, F bodies...}
    e <var> <tv>... 0    extension: define fresh var as the conjunction shown
    d <tv>... 0          delete one instance of the nogood
    l <atom>... 0        add the loop nogood for the atom set (first atom kept)
    u <k> <atom>{k} <tv>... 0  unfounded set, then the excluded assignment
    b <body> <tv>... 0   name a program body and add its defining nogoods

`a 0` adds the empty nogood; a proof succeeds when the empty nogood is
present after all steps. Parsing preserves token order, so serialize(parse(t))
returns t exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .completion import BodyCatalog, BodyRegistry
from .core import Program
from .loops import external_bodies

STEP_KINDS = frozenset("acsedlub")


class ProofSyntaxError(ValueError):
    """Raised on malformed proof text."""


@dataclass(frozen=True)
class Step:
    """One proof line; field use depends on kind (see module docstring)."""

    kind: str
    head: int = 0
    lits: tuple[int, ...] = ()
    unfounded: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.unfounded and self.kind != "u":
            raise ValueError("only u steps carry an unfounded set")


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...]

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise ProofSyntaxError(f"line {line}: non-integer token") from None


def _parse_step(kind: str, payload: list[int], line: int) -> Step:
    def positive(values: Iterable[int], what: str) -> tuple[int, ...]:
        out = tuple(values)
        if any(v <= 0 for v in out):
            raise ProofSyntaxError(f"line {line}: {what} must be positive ids")
        return out

    def signed(values: Iterable[int]) -> tuple[int, ...]:
        return tuple(values)

    if kind in ("a", "d"):
        return Step(kind, lits=signed(payload))
    if kind == "c":
        if len(payload) < 2:
            raise ProofSyntaxError(f"line {line}: c needs a body id and atom ids")
        (body,) = positive(payload[:1], "body id")
        return Step(kind, head=body, lits=positive(payload[1:], "atom ids"))
    if kind == "s":
        if not payload:
            raise ProofSyntaxError(f"line {line}: s needs an atom id")
        (atom,) = positive(payload[:1], "atom id")
        return Step(kind, head=atom, lits=positive(payload[1:], "body ids"))
    if kind == "e":
        if len(payload) != 1:
            raise ProofSyntaxError(f"line {line}: e takes exactly one variable id")
        (var,) = positive(payload, "variable id")
        return Step(kind, head=var)
    if kind == "b":
        if not payload:
            raise ProofSyntaxError(f"line {line}: b needs a variable id")
        (var,) = positive(payload[:1], "variable id")
        return Step(kind, head=var, lits=signed(payload[1:]))
    if kind == "l":
        atoms = positive(payload, "loop atoms")
        if not atoms:
            raise ProofSyntaxError(f"line {line}: l needs at least one atom")
        if len(set(atoms)) != len(atoms):
            raise ProofSyntaxError(f"line {line}: repeated loop atom")
        return Step(kind, lits=atoms)
    if kind == "u":
        if not payload:
            raise ProofSyntaxError(f"line {line}: u needs a set size")
        size = payload[0]
        if size < 1 or len(payload) < 1 + size:
            raise ProofSyntaxError(f"line {line}: bad unfounded set size")
        atoms = positive(payload[1 : 1 + size], "unfounded atoms")
        if len(set(atoms)) != len(atoms):
            raise ProofSyntaxError(f"line {line}: repeated unfounded atom")
        return Step(kind, lits=signed(payload[1 + size :]), unfounded=atoms)
    raise ProofSyntaxError(f"line {line}: unknown step kind {kind!r}")


def parse_proof(text: str) -> Proof:
    """Parse proof text; raises ProofSyntaxError on malformed input."""
    steps: list[Step] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        tokens = raw.split()
        kind = tokens[0]
        if kind not in STEP_KINDS:
            raise ProofSyntaxError(f"line {line_no}: unknown step kind {kind!r}")
        payload = _ints(tokens[1:], line_no)
        if not payload or payload[-1] != 0:
            raise ProofSyntaxError(f"line {line_no}: missing 0 terminator")
        payload = payload[:-1]
        if 0 in payload:
            raise ProofSyntaxError(f"line {line_no}: stray 0 before terminator")
        steps.append(_parse_step(kind, payload, line_no))
    return Proof(tuple(steps))


def serialize_step(step: Step) -> str:
    if step.kind in ("a", "d", "l"):
        body = list(step.lits)
    elif step.kind == "u":
        body = [len(step.unfounded), *step.unfounded, *step.lits]
    else:
        body = [step.head, *step.lits]
    return " ".join(str(tok) for tok in (step.kind, *body, 0))


def serialize_proof(proof: Proof) -> str:
    """Render a proof; inverse of parse_proof."""
    return "".join(serialize_step(step) + "\n" for step in proof)


def sorted_lits(lits: Iterable[int]) -> tuple[int, ...]:
    """Canonical literal order for generated steps: by variable id."""
    return tuple(sorted(lits, key=lambda l: (abs(l), -l)))


def declare_bodies(
    proof: Proof, program: Program, catalog: BodyCatalog, registry: BodyRegistry
) -> Proof:
    """Prepend b steps for bodies the proof references but never declares.

    Covers body ids named by c/s steps and the external bodies of l steps;
    ids must already be known to the registry.
    """
    declared = {step.head for step in proof if step.kind == "b"}
    referenced: set[int] = set()
    for step in proof:
        if step.kind == "c":
            referenced.add(step.head)
        elif step.kind == "s":
            referenced.update(step.lits)
        elif step.kind == "l":
            for body in external_bodies(program, catalog, step.lits):
                referenced.add(registry.id_of(body))
    missing = sorted(referenced - declared)
    prefix = tuple(
        Step("b", head=body_id, lits=sorted_lits(registry.lits_of(body_id)))
        for body_id in missing
    )
    return Proof(prefix + proof.steps)
