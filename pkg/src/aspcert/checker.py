"""Polynomial-time proof checking against a ground program.

The checker keeps a multiset of nogoods. b steps name program bodies and
attach their definitions; c and s steps may only add nogoods that belong to
the program's completion; a steps must have the reverse-unit-propagation
property against the current multiset; l and u steps are validated against
the dependency graph and the unfounded-set conditions; d steps remove one
instance. The proof succeeds when the empty nogood is present at the end.

Two error classes mirror the CLI exit codes: ProofFormatError means the proof
is ill-formed relative to the program (unknown ids, redeclared bodies, ...),
while a failed semantic condition yields an unsuccessful CheckResult naming
the offending step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .completion import (
    BodyCatalog,
    BodyRegistry,
    body_catalog,
    body_definition,
    forward_nogood,
    induced_bodies_of_rule,
)
from .core import Nogood, Program, Rule, RuleKind, is_consistent
from .loops import dependency_graph, external_bodies, is_loop, is_unfounded_set, loop_nogood
from .proof import Proof, Step
from .propagation import WeightRulePropagator, rup_run


class ProofFormatError(ValueError):
    """Proof text is well-formed but inconsistent with the program."""


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def render(self) -> str:
        if self.ok:
            return "Success"
        if self.step is None:
            return f"Error: {self.reason}"
        return f"Error at step {self.step}: {self.reason}"


class _StepError(Exception):
    def __init__(self, reason: str) -> None:
        self.reason = reason


class CheckerState:
    """Stepwise proof checker; drive with step(), finish with result()."""

    def __init__(
        self,
        program: Program,
        *,
        preloaded: bool = False,
        strict_delete: bool = False,
        budget: int | None = None,
    ) -> None:
        self.program = program
        self.preloaded = preloaded
        self.strict_delete = strict_delete
        self.catalog: BodyCatalog = body_catalog(
            program, budget if budget is not None else 4096, defer_over_budget=True
        )
        self.registry = BodyRegistry(program.atom_count)
        self.graph = dependency_graph(program)
        self.store: list[Nogood | None] = []
        self.live: dict[Nogood, list[int]] = {}
        self.box_count = 0
        self.ext_vars: set[int] = set()
        self.propagators: list[WeightRulePropagator] = []
        self.deferred_heads = frozenset(
            a for rule in self.catalog.deferred for a in rule.head
        )
        self.backward_pairs = frozenset(
            (atom, body)
            for rule in program.rules
            if rule.kind is not RuleKind.CHOICE and rule not in self.catalog.deferred
            for atom in rule.head
            for body in induced_bodies_of_rule(rule, atom)
        )
        self.step_no = 0
        if preloaded:
            self._preload()

    # -- nogood multiset ---------------------------------------------------

    def insert(self, nogood: Nogood) -> None:
        self.store.append(nogood)
        self.live.setdefault(nogood, []).append(len(self.store) - 1)
        if not nogood:
            self.box_count += 1

    def remove(self, nogood: Nogood) -> bool:
        stack = self.live.get(nogood)
        if not stack:
            return False
        self.store[stack.pop()] = None
        if not nogood:
            self.box_count -= 1
        return True

    def live_nogoods(self) -> list[Nogood]:
        return [delta for delta in self.store if delta is not None]

    # -- setup ---------------------------------------------------------------

    def _preload(self) -> None:
        for body in self.catalog.order:
            body_id = self.registry.intern_internal(body)
            for nogood in body_definition(body_id, body):
                self.insert(nogood)
        by_head: dict[int, list[Rule]] = {}
        for rule in self.catalog.deferred:
            by_head.setdefault(rule.head[0], []).append(rule)
        for head, rules in by_head.items():
            if len(rules) > 1:
                raise ProofFormatError(
                    f"atom {head} heads {len(rules)} weight rules over the "
                    "expansion budget; preloaded checking supports at most one"
                )
        for atom in self.program.atom_ids():
            body_ids = tuple(self.registry.id_of(b) for b in self.catalog.bodies_of(atom))
            if atom in self.deferred_heads:
                for rule in by_head[atom]:
                    self.propagators.append(WeightRulePropagator(rule, body_ids))
            else:
                self.insert(forward_nogood(atom, body_ids))
        for atom, body in sorted(self.backward_pairs, key=lambda p: (p[0], sorted(p[1]))):
            self.insert(frozenset({-atom, self.registry.id_of(body)}))

    # -- variable vocabulary -------------------------------------------------

    def _known_var(self, var: int) -> bool:
        return (
            1 <= var <= self.program.atom_count
            or self.registry.has_id(var)
            or var in self.ext_vars
        )

    def _require_known(self, lits: tuple[int, ...]) -> None:
        for lit in lits:
            if not self._known_var(abs(lit)):
                raise ProofFormatError(
                    f"step {self.step_no}: unknown variable {abs(lit)}"
                )

    def _require_atoms(self, atoms: tuple[int, ...]) -> None:
        for atom in atoms:
            if not 1 <= atom <= self.program.atom_count:
                raise ProofFormatError(f"step {self.step_no}: unknown atom {atom}")

    # -- steps -----------------------------------------------------------------

    def step(self, step: Step) -> None:
        """Apply one proof step; raises _StepError via check() on bad semantics."""
        self.step_no += 1
        if self.preloaded and step.kind in ("b", "c", "s"):
            raise ProofFormatError(
                f"step {self.step_no}: {step.kind} steps are not allowed "
                "with a preloaded completion"
            )
        getattr(self, f"_step_{step.kind}")(step)

    def _step_b(self, step: Step) -> None:
        self._require_atoms(tuple(abs(l) for l in step.lits))
        if not is_consistent(step.lits):
            raise ProofFormatError(f"step {self.step_no}: contradictory body literals")
        body = frozenset(step.lits)
        if body not in self.catalog:
            raise ProofFormatError(
                f"step {self.step_no}: literal set is not an induced body "
                "of the program (or its expansion exceeds the budget)"
            )
        try:
            self.registry.declare(step.head, body)
        except ValueError as exc:
            raise ProofFormatError(f"step {self.step_no}: {exc}") from None
        for nogood in body_definition(step.head, body):
            self.insert(nogood)

    def _step_a(self, step: Step) -> None:
        self._require_known(step.lits)
        delta = frozenset(step.lits)
        if not rup_run(self.store, delta, self.propagators).is_conflict:
            raise _StepError("nogood lacks the unit-propagation conflict property")
        self.insert(delta)

    def _step_c(self, step: Step) -> None:
        if not self.registry.has_id(step.head):
            raise ProofFormatError(f"step {self.step_no}: unknown body id {step.head}")
        self._require_atoms(step.lits)
        body = self.registry.lits_of(step.head)
        if len(step.lits) != 1 or (step.lits[0], body) not in self.backward_pairs:
            raise _StepError("not a rule-firing nogood of the program")
        self.insert(frozenset({step.head, *(-a for a in step.lits)}))

    def _step_s(self, step: Step) -> None:
        self._require_atoms((step.head,))
        if step.head in self.deferred_heads:
            raise ProofFormatError(
                f"step {self.step_no}: induced bodies of atom {step.head} "
                "exceed the expansion budget"
            )
        if len(set(step.lits)) != len(step.lits):
            raise _StepError("repeated body id")
        bodies = []
        for body_id in step.lits:
            if not self.registry.has_id(body_id):
                raise ProofFormatError(
                    f"step {self.step_no}: unknown body id {body_id}"
                )
            bodies.append(self.registry.lits_of(body_id))
        if set(bodies) != set(self.catalog.bodies_of(step.head)):
            raise _StepError("body list does not match the atom's induced bodies")
        self.insert(forward_nogood(step.head, step.lits))

    def _step_e(self, step: Step) -> None:
        self._require_known(step.lits)
        if self._known_var(step.head):
            raise _StepError("extension variable is not fresh")
        self.ext_vars.add(step.head)
        delta = frozenset(step.lits)
        self.insert(delta | {-step.head})
        for lit in step.lits:
            self.insert(frozenset({step.head, -lit}))

    def _step_d(self, step: Step) -> None:
        self._require_known(step.lits)
        if not self.remove(frozenset(step.lits)) and self.strict_delete:
            raise _StepError("deleted nogood is not present")

    def _step_l(self, step: Step) -> None:
        self._require_atoms(step.lits)
        atoms = frozenset(step.lits)
        if atoms & self.deferred_heads:
            raise ProofFormatError(
                f"step {self.step_no}: loop atoms supported by a weight rule "
                "beyond the expansion budget"
            )
        if not is_loop(self.graph, atoms):
            raise _StepError("atom set is not a loop of the program")
        body_ids = []
        for body in external_bodies(self.program, self.catalog, atoms):
            if self.registry.has_lits(body):
                body_ids.append(self.registry.id_of(body))
            else:
                body_id = self.registry.intern_internal(body)
                for nogood in body_definition(body_id, body):
                    self.insert(nogood)
                body_ids.append(body_id)
        self.insert(loop_nogood(step.lits[0], body_ids))

    def _step_u(self, step: Step) -> None:
        self._require_atoms(step.unfounded)
        self._require_known(step.lits)
        if not is_consistent(step.lits):
            raise ProofFormatError(
                f"step {self.step_no}: contradictory assignment literals"
            )
        unfounded = frozenset(step.unfounded)
        assignment = frozenset(step.lits)
        if not any(a in assignment for a in unfounded):
            raise _StepError("assignment makes no unfounded atom true")
        if not is_unfounded_set(self.program, assignment, unfounded, self.registry):
            raise _StepError("atom set is not unfounded for the assignment")
        self.insert(assignment)

    # -- result ------------------------------------------------------------

    def result(self) -> CheckResult:
        if self.box_count < 1:
            return CheckResult(False, None, "empty nogood never derived (or deleted)")
        return CheckResult(True)


def check(
    program: Program,
    proof: Proof,
    *,
    preloaded: bool = False,
    strict_delete: bool = False,
    budget: int | None = None,
) -> CheckResult:
    """Check a proof of inconsistency for the program."""
    state = CheckerState(
        program, preloaded=preloaded, strict_delete=strict_delete, budget=budget
    )
    for index, step in enumerate(proof, start=1):
        try:
            state.step(step)
        except _StepError as exc:
            return CheckResult(False, index, exc.reason)
    return state.result()
