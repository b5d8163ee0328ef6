"""Unit propagation over nogoods, RUP tests, and weight-rule propagation.

A nogood forbids its literal set: it is violated when all entries hold, and
unit when exactly one entry is unassigned and the rest hold, which forces the
complement of that entry. unit_propagate scans the nogood list in order and
repeats until a full pass derives nothing, so derivation order is a
deterministic function of list order (the solver uses its own watch-based
engine internally; only the result set matters there).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from .core import Assignment, Nogood, Rule, RuleKind

Derivation = tuple[int, Nogood]


class Propagator(Protocol):
    """External propagation hook, consulted at each unit-propagation fixpoint."""

    def __call__(self, assigned: frozenset[int]) -> tuple[Nogood | None, list[Derivation]]:
        """Return (violated nogood or None, forced literals with reasons)."""


@dataclass(frozen=True)
class PropagationResult:
    """Outcome of a propagation run: conflict, forced literals, final state."""

    conflict: Nogood | None
    derived: tuple[int, ...]
    assignment: Assignment

    @property
    def is_conflict(self) -> bool:
        return self.conflict is not None


def unit_propagate(
    nogoods: Iterable[Nogood | None],
    assumptions: Iterable[int] = (),
    propagators: Sequence[Propagator] = (),
) -> PropagationResult:
    """Propagate to fixpoint from the assumptions; None entries are skipped."""
    store = [delta for delta in nogoods if delta is not None]
    assigned: set[int] = set()
    derived: list[int] = []

    def place(lit: int) -> bool:
        if -lit in assigned:
            return False
        assigned.add(lit)
        return True

    for lit in assumptions:
        if not place(lit):
            return PropagationResult(frozenset({-lit}), tuple(derived), frozenset(assigned))

    while True:
        changed = False
        for delta in store:
            free = None
            for lit in delta:
                if lit in assigned:
                    continue
                if -lit in assigned or free is not None:
                    free = 0
                    break
                free = lit
            if free == 0:
                continue
            if free is None:
                return PropagationResult(delta, tuple(derived), frozenset(assigned))
            assigned.add(-free)
            derived.append(-free)
            changed = True
        if changed:
            continue
        for propagator in propagators:
            conflict, forced = propagator(frozenset(assigned))
            if conflict is not None:
                return PropagationResult(conflict, tuple(derived), frozenset(assigned))
            for lit, reason in forced:
                if -lit in assigned:
                    return PropagationResult(reason, tuple(derived), frozenset(assigned))
                if lit not in assigned:
                    assigned.add(lit)
                    derived.append(lit)
                    changed = True
        if not changed:
            return PropagationResult(None, tuple(derived), frozenset(assigned))


def rup_run(
    nogoods: Iterable[Nogood | None],
    delta: Nogood,
    propagators: Sequence[Propagator] = (),
) -> PropagationResult:
    """Propagate under the assumption that every literal of delta holds."""
    return unit_propagate(nogoods, sorted(delta, key=lambda l: (abs(l), -l)), propagators)


def is_rup(
    nogoods: Iterable[Nogood | None],
    delta: Nogood,
    propagators: Sequence[Propagator] = (),
) -> bool:
    """Check that asserting delta propagates to a conflict (reverse unit propagation)."""
    return rup_run(nogoods, delta, propagators).is_conflict


class WeightRulePropagator:
    """Propagation for one weight rule without materializing its bodies.

    Emulates unit propagation over the rule's completion fragment. With T the
    satisfied weight, U the unassigned weight, and w the bound:

    * T >= w forces the head true;
    * T + U < w kills the body; if no other support of the head remains, the
      head is forced false;
    * a false head forces the complement of any unassigned literal l with
      T + wght(l) >= w;
    * a true head whose other supports are all false forces the unassigned
      indispensable literals S = {l : T + U - wght(l) < w}, but only when S
      alone reaches the bound (then exactly one non-falsified minimal body
      remains, namely S, and unit propagation forces its literals).

    Reasons are nogoods over the rule's own variables (plus the other-support
    body variables where those gate the derivation).
    """

    def __init__(self, rule: Rule, other_support_ids: Sequence[int] = ()) -> None:
        if rule.kind is not RuleKind.WEIGHT:
            raise ValueError("weight propagation needs a weight rule")
        self.rule = rule
        self.head = rule.head[0]
        self.other_support_ids = tuple(other_support_ids)

    def __call__(self, assigned: frozenset[int]) -> tuple[Nogood | None, list[Derivation]]:
        head, rule = self.head, self.rule
        bound = rule.bound
        sat = [lit for lit, _ in rule.weights if lit in assigned]
        falsified = [lit for lit, _ in rule.weights if -lit in assigned]
        free = [lit for lit, _ in rule.weights if lit not in assigned and -lit not in assigned]
        total_sat = sum(rule.weight_of(lit) for lit in sat)
        total_free = sum(rule.weight_of(lit) for lit in free)
        sole_support = all(-b in assigned for b in self.other_support_ids)
        dead_reason = frozenset(
            {head, *(-lit for lit in falsified), *(-b for b in self.other_support_ids)}
        )

        derivations: list[Derivation] = []
        forced: set[int] = set()

        def derive(lit: int, reason: Nogood) -> Nogood | None:
            if -lit in assigned:
                return reason
            if lit not in assigned and lit not in forced:
                forced.add(lit)
                derivations.append((lit, reason))
            return None

        if total_sat >= bound:
            conflict = derive(head, frozenset({-head, *sat}))
            if conflict is not None:
                return conflict, []
        if total_sat + total_free < bound and sole_support:
            conflict = derive(-head, dead_reason)
            if conflict is not None:
                return conflict, []
        if -head in assigned:
            for lit in free:
                if total_sat + rule.weight_of(lit) >= bound:
                    conflict = derive(-lit, frozenset({-head, lit, *sat}))
                    if conflict is not None:
                        return conflict, []
        if head in assigned and sole_support and total_sat + total_free >= bound:
            indispensable = [
                lit
                for lit in sat + free
                if total_sat + total_free - rule.weight_of(lit) < bound
            ]
            if sum(rule.weight_of(lit) for lit in indispensable) >= bound:
                for lit in indispensable:
                    if lit in free:
                        conflict = derive(lit, dead_reason | {-lit})
                        if conflict is not None:
                            return conflict, []
        return None, derivations


def weight_propagate(rule: Rule, assignment: Assignment) -> tuple[Nogood | None, list[Derivation]]:
    """One propagation round for a weight rule taken as its head's only support."""
    return WeightRulePropagator(rule)(frozenset(assignment))
