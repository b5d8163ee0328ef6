"""Ground program representation: signed variables, nogoods, rules, programs.

A signed variable is a plain int: +v asserts variable v true, -v asserts it
false. Variables 1..n are the program atoms; higher ids name rule bodies and
extension variables. A nogood is a set of signed variables that must not all
hold at once; the empty nogood marks inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

Nogood = frozenset[int]
Assignment = frozenset[int]

EMPTY_NOGOOD: Nogood = frozenset()


def complement(literal: int) -> int:
    """Flip the sign of a signed variable."""
    return -literal


def variable(literal: int) -> int:
    """Strip the sign of a signed variable."""
    return abs(literal)


def is_consistent(literals: Iterable[int]) -> bool:
    """Check that no variable occurs with both signs."""
    seen = set(literals)
    return not any(-lit in seen for lit in seen)


def make_assignment(literals: Iterable[int]) -> Assignment:
    """Build an assignment, rejecting contradictory literal sets."""
    lits = frozenset(literals)
    if 0 in lits:
        raise ValueError("0 is not a signed variable")
    if not is_consistent(lits):
        clash = sorted(v for v in lits if -v in lits and v > 0)
        raise ValueError(f"contradictory assignment on variables {clash}")
    return lits


class RuleKind(Enum):
    BASIC = "basic"
    CHOICE = "choice"
    WEIGHT = "weight"


@dataclass(frozen=True)
class Rule:
    """One ground rule; heads and bodies hold signed atom ids.

    BASIC covers normal rules (one head atom) and disjunctive rules (several).
    CHOICE rules make their head atoms free when the body holds. WEIGHT rules
    have a single head, a bound, and weighted signed literals instead of a
    plain body; pos_body/neg_body are derived from the weight domain.
    """

    kind: RuleKind
    head: tuple[int, ...]
    pos_body: frozenset[int] = frozenset()
    neg_body: frozenset[int] = frozenset()
    bound: int = 0
    weights: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.head:
            raise ValueError("rule needs at least one head atom")
        if any(a <= 0 for a in self.head):
            raise ValueError("head atoms are positive ids")
        if len(set(self.head)) != len(self.head):
            raise ValueError("duplicate head atom")
        if self.kind is RuleKind.WEIGHT:
            if len(self.head) != 1:
                raise ValueError("weight rule has exactly one head atom")
            if self.bound < 0:
                raise ValueError("weight bound is non-negative")
            lits = [lit for lit, _ in self.weights]
            if not is_consistent(lits) or len(set(lits)) != len(lits):
                raise ValueError("weight literals must be distinct and consistent")
            if any(w <= 0 for _, w in self.weights):
                raise ValueError("weights are positive")
        elif self.weights or self.bound:
            raise ValueError("only weight rules carry weights and a bound")
        if self.pos_body & self.neg_body:
            raise ValueError("atom occurs positively and negatively in one body")

    @property
    def is_disjunctive(self) -> bool:
        return self.kind is RuleKind.BASIC and len(self.head) > 1

    def body_literals(self) -> frozenset[int]:
        """The rule body as signed atom ids (weight rules: the weight domain)."""
        if self.kind is RuleKind.WEIGHT:
            return frozenset(lit for lit, _ in self.weights)
        return frozenset(self.pos_body) | frozenset(-a for a in self.neg_body)

    def weight_of(self, lit: int) -> int:
        for candidate, w in self.weights:
            if candidate == lit:
                return w
        raise KeyError(lit)


def basic_rule(head: Sequence[int], pos: Iterable[int] = (), neg: Iterable[int] = ()) -> Rule:
    """Build a normal or disjunctive rule."""
    return Rule(RuleKind.BASIC, tuple(head), frozenset(pos), frozenset(neg))


def choice_rule(head: Sequence[int], pos: Iterable[int] = (), neg: Iterable[int] = ()) -> Rule:
    """Build a choice rule."""
    return Rule(RuleKind.CHOICE, tuple(head), frozenset(pos), frozenset(neg))


def weight_rule(head: int, bound: int, weights: Mapping[int, int]) -> Rule:
    """Build a weight rule from a signed-literal -> weight map."""
    items = tuple(sorted(weights.items(), key=lambda kv: (abs(kv[0]), -kv[0])))
    return Rule(
        RuleKind.WEIGHT,
        (head,),
        frozenset(lit for lit in weights if lit > 0),
        frozenset(-lit for lit in weights if lit < 0),
        bound,
        items,
    )


@dataclass(frozen=True)
class Program:
    """A ground program: atom names (ids 1..n in order) and rules."""

    atom_names: tuple[str, ...]
    rules: tuple[Rule, ...]
    _ids: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        ids = {name: i + 1 for i, name in enumerate(self.atom_names)}
        if len(ids) != len(self.atom_names):
            raise ValueError("duplicate atom name")
        object.__setattr__(self, "_ids", ids)
        for rule in self.rules:
            for atom in self.atoms_of(rule):
                if not 1 <= atom <= len(self.atom_names):
                    raise ValueError(f"rule uses unknown atom id {atom}")

    @staticmethod
    def atoms_of(rule: Rule) -> Iterator[int]:
        yield from rule.head
        yield from rule.pos_body
        yield from rule.neg_body

    @property
    def atom_count(self) -> int:
        return len(self.atom_names)

    def atom_ids(self) -> range:
        return range(1, len(self.atom_names) + 1)

    def atom(self, name: str) -> int:
        return self._ids[name]

    def name(self, atom_id: int) -> str:
        return self.atom_names[atom_id - 1]

    def literal_str(self, lit: int) -> str:
        name = self.name(abs(lit)) if abs(lit) <= self.atom_count else str(abs(lit))
        return name if lit > 0 else f"not {name}"


def induced_assignment(program: Program, body_literals: Iterable[int]) -> Assignment:
    """Map a body literal set to the assignment it requires of its atoms."""
    lits = list(body_literals)
    for lit in lits:
        if not 1 <= abs(lit) <= program.atom_count:
            raise ValueError(f"unknown atom id {abs(lit)}")
    return make_assignment(lits)
