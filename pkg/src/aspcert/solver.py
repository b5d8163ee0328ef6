"""Conflict-driven solving with machine-checkable inconsistency proofs.

The solver assigns atoms and body variables under the program's completion
nogoods, learns first-UIP nogoods from conflicts, and breaks unfounded
positive recursion with loop nogoods. Every step the independent checker
needs is logged: b lines name all bodies up front, completion nogoods get a
c or s line the first time they fire, loop nogoods an l line when added,
learned nogoods an a line, and an inconsistent run ends with the empty
nogood once a conflict no longer depends on any decision.

Implied literals carry implication levels (the highest level among their
reason's other entries), so backjumping removes exactly the literals that
depended on undone decisions. Watch lists are rescanned from the start of
the trail after every backjump, which keeps the two-watch scheme sound under
such non-suffix trail removal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import IO

import networkx as nx

from .completion import (
    DEFAULT_BODY_BUDGET,
    BodyRegistry,
    backward_family,
    body_catalog,
    body_definition,
    forward_family,
)
from .core import Nogood, Program, RuleKind
from .loops import cyclic_atoms, dependency_graph, external_bodies, loop_nogood
from .proof import Proof, Step, serialize_step, sorted_lits

HEURISTICS = ("min-true", "min-false", "random")
RESTART_INTERVAL = 100

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"
UNKNOWN = "UNKNOWN"


class SolveError(ValueError):
    """Raised for programs outside the solver's scope."""


@dataclass(frozen=True)
class SolveResult:
    status: str
    answer_set: frozenset[int] | None = None
    proof: Proof | None = None
    reason: str = ""


def _check_scope(program: Program) -> None:
    if any(rule.is_disjunctive for rule in program.rules):
        raise SolveError("disjunctive rules are not supported by the solver")
    graph = dependency_graph(program)
    scc_of: dict[int, int] = {}
    for i, component in enumerate(nx.strongly_connected_components(graph)):
        for atom in component:
            scc_of[atom] = i
    for rule in program.rules:
        if rule.kind is RuleKind.WEIGHT:
            head = rule.head[0]
            if any(lit > 0 and scc_of[lit] == scc_of[head] for lit, _ in rule.weights):
                raise SolveError("recursive weight rules are not supported")


class _Search:
    """Two-watch engine plus CDNL state over atoms and body variables."""

    def __init__(
        self,
        program: Program,
        heuristic: str,
        rng: random.Random,
        sink: IO[str] | None,
        budget: int,
    ) -> None:
        self.program = program
        self.heuristic = heuristic
        self.rng = rng
        self.sink = sink
        self.steps: list[Step] = []

        self.catalog = body_catalog(program, budget, defer_over_budget=True)
        self.registry = BodyRegistry(program.atom_count)
        for body in self.catalog.order:
            self.registry.intern(body)
        self.var_count = program.atom_count + len(self.catalog.order)
        self.graph = dependency_graph(program)
        self.cyclic = cyclic_atoms(self.graph)
        self.supports: dict[int, list[tuple[frozenset[int], int, frozenset[int]]]] = {
            atom: [
                (body, self.registry.id_of(body), frozenset(l for l in body if l > 0))
                for body in self.catalog.bodies_of(atom)
            ]
            for atom in self.cyclic
        }

        self.sign: dict[int, int] = {}
        self.level: dict[int, int] = {}
        self.reason: dict[int, int | None] = {}
        self.trail: list[int] = []
        self.qhead = 0
        self.dl = 0

        self.nogoods: list[tuple[int, ...] | None] = []
        self.watched: list[tuple[int, int]] = []
        self.watches: dict[int, list[int]] = {}
        self.tags: list[Step | None] = []
        self.recorded: set[int] = set()
        self.learned_idxs: list[int] = []
        self.loop_seen: set[Nogood] = set()
        self.conflicts = 0

    # -- proof emission ------------------------------------------------------

    def emit(self, step: Step) -> None:
        self.steps.append(step)
        if self.sink is not None:
            self.sink.write(serialize_step(step) + "\n")

    def record(self, idx: int) -> None:
        tag = self.tags[idx]
        if tag is not None and idx not in self.recorded:
            self.recorded.add(idx)
            self.emit(tag)

    # -- assignment ------------------------------------------------------------

    def value(self, lit: int) -> bool | None:
        sign = self.sign.get(abs(lit))
        if sign is None:
            return None
        return (sign > 0) == (lit > 0)

    def assign(self, lit: int, reason_idx: int | None) -> None:
        var = abs(lit)
        if reason_idx is None:
            lv = self.dl
        else:
            entries = self.nogoods[reason_idx] or ()
            lv = max((self.level[abs(r)] for r in entries if abs(r) != var), default=0)
        self.sign[var] = 1 if lit > 0 else -1
        self.level[var] = lv
        self.reason[var] = reason_idx
        self.trail.append(lit)

    def backjump(self, target: int) -> None:
        kept = []
        for lit in self.trail:
            if self.level[abs(lit)] <= target:
                kept.append(lit)
            else:
                var = abs(lit)
                del self.sign[var], self.level[var], self.reason[var]
        self.trail = kept
        self.qhead = 0
        self.dl = target

    # -- nogood store ------------------------------------------------------------

    def attach(self, lits: Nogood, tag: Step | None, learned: bool = False) -> int | None:
        """Add a nogood; returns its index as a conflict if currently violated."""
        entries = sorted_lits(lits)
        idx = len(self.nogoods)
        self.nogoods.append(entries)
        self.tags.append(tag)
        if learned:
            self.learned_idxs.append(idx)

        falses = [l for l in entries if self.value(l) is False]
        frees = [l for l in entries if self.value(l) is None]
        trues = sorted(
            (l for l in entries if self.value(l) is True),
            key=lambda l: -self.level[abs(l)],
        )
        if falses:
            pool = falses + frees + trues
        elif len(frees) >= 2:
            pool = frees
        else:
            pool = frees + trues
        pair = (pool[0], pool[1] if len(pool) > 1 else pool[0])
        self.watched.append(pair)
        for lit in set(pair):
            self.watches.setdefault(lit, []).append(idx)

        if falses:
            return None
        if not frees:
            self.record(idx)
            return idx
        if len(frees) == 1:
            self.record(idx)
            self.assign(-frees[0], idx)
        return None

    def detach(self, idx: int) -> None:
        self.nogoods[idx] = None

    # -- propagation ------------------------------------------------------------

    def propagate(self) -> int | None:
        """Run the watch loop to fixpoint; returns a violated nogood's index."""
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            idxs = self.watches.get(lit)
            if not idxs:
                continue
            kept: list[int] = []
            conflict = None
            for pos, idx in enumerate(idxs):
                entries = self.nogoods[idx]
                if entries is None:
                    continue
                w1, w2 = self.watched[idx]
                if w2 == lit and w1 != lit:
                    w1, w2 = w2, w1
                replacement = None
                for cand in entries:
                    if cand != w1 and cand != w2 and self.value(cand) is not True:
                        replacement = cand
                        break
                if replacement is not None:
                    self.watched[idx] = (replacement, w2)
                    self.watches.setdefault(replacement, []).append(idx)
                    continue
                kept.append(idx)
                other = self.value(w2) if w2 != w1 else True
                if other is False:
                    continue
                if other is None:
                    self.record(idx)
                    self.assign(-w2, idx)
                    continue
                self.record(idx)
                conflict = idx
                kept.extend(idxs[pos + 1 :])
                break
            self.watches[lit] = kept
            if conflict is not None:
                return conflict
        return None

    def propagate_full(self) -> int | None:
        """Watch fixpoint plus unfounded-set handling, as one closed operation."""
        while True:
            conflict = self.propagate()
            if conflict is not None or not self.cyclic:
                return conflict
            component = self._unfounded_component()
            if component is None:
                return None
            atoms = sorted(component)
            bodies = external_bodies(self.program, self.catalog, component)
            lam = loop_nogood(atoms[0], (self.registry.id_of(b) for b in bodies))
            if lam in self.loop_seen:
                raise AssertionError("unfounded component recurred")
            self.loop_seen.add(lam)
            self.emit(Step("l", lits=tuple(atoms)))
            conflict = self.attach(lam, None)
            if conflict is not None:
                return conflict

    def _unfounded_component(self) -> frozenset[int] | None:
        """A source SCC of the support graph on the greatest unfounded set."""
        unmarked = {a for a in self.cyclic if self.value(a) is not False}
        if not unmarked:
            return None
        changed = True
        while changed:
            changed = False
            for atom in sorted(unmarked):
                for _, body_id, pos in self.supports[atom]:
                    if self.value(body_id) is False or pos & unmarked:
                        continue
                    unmarked.discard(atom)
                    changed = True
                    break
        if not unmarked:
            return None
        graph = nx.DiGraph()
        graph.add_nodes_from(unmarked)
        for atom in unmarked:
            for _, body_id, pos in self.supports[atom]:
                if self.value(body_id) is False:
                    continue
                for source in pos & unmarked:
                    graph.add_edge(source, atom)
        condensed = nx.condensation(graph)
        sources = [n for n in condensed.nodes if condensed.in_degree(n) == 0]
        chosen = min(sources, key=lambda n: min(condensed.nodes[n]["members"]))
        return frozenset(condensed.nodes[chosen]["members"])

    # -- conflict analysis ---------------------------------------------------

    def analyze(self, conflict_idx: int, conflict_level: int) -> tuple[Nogood, int]:
        """First-UIP resolution; returns the learned nogood and backjump level."""
        seen: set[int] = set()
        below: list[int] = []
        pending = 0

        def merge(lit: int) -> None:
            nonlocal pending
            var = abs(lit)
            lv = self.level[var]
            if var in seen or lv == 0:
                return
            seen.add(var)
            if lv == conflict_level:
                pending += 1
            else:
                below.append(lit)

        for lit in self.nogoods[conflict_idx] or ():
            merge(lit)
        uip = 0
        for i in range(len(self.trail) - 1, -1, -1):
            lit = self.trail[i]
            var = abs(lit)
            if var not in seen or self.level[var] != conflict_level:
                continue
            pending -= 1
            if pending == 0:
                uip = lit
                break
            reason_idx = self.reason[var]
            for entry in self.nogoods[reason_idx] or ():
                if entry != -lit:
                    merge(entry)
        if uip == 0:
            raise AssertionError("conflict analysis found no UIP")
        learned = frozenset({uip, *below})
        target = max((self.level[abs(l)] for l in below), default=0)
        return learned, target

    # -- search ---------------------------------------------------------------

    def pick_branch(self) -> int | None:
        free = [v for v in range(1, self.var_count + 1) if v not in self.sign]
        if not free:
            return None
        if self.heuristic == "random":
            var = self.rng.choice(free)
            return var if self.rng.random() < 0.5 else -var
        var = free[0]
        return var if self.heuristic == "min-true" else -var

    def forget_learned(self) -> None:
        protected = {self.reason[abs(lit)] for lit in self.trail}
        kept = []
        for idx in self.learned_idxs:
            if self.nogoods[idx] is None:
                continue
            if idx in protected:
                kept.append(idx)
                continue
            self.emit(Step("d", lits=self.nogoods[idx]))
            self.detach(idx)
        self.learned_idxs = kept

    def run(self, restarts: bool) -> SolveResult:
        while True:
            conflict = self.propagate_full()
            if conflict is not None:
                entries = self.nogoods[conflict] or ()
                conflict_level = max((self.level[abs(l)] for l in entries), default=0)
                if conflict_level == 0:
                    self.emit(Step("a"))
                    return SolveResult(INCONSISTENT, proof=Proof(tuple(self.steps)))
                learned, target = self.analyze(conflict, conflict_level)
                self.emit(Step("a", lits=sorted_lits(learned)))
                self.conflicts += 1
                self.backjump(target)
                self.attach(learned, None, learned=True)
                if restarts and self.conflicts % RESTART_INTERVAL == 0:
                    self.backjump(0)
                    self.forget_learned()
                continue
            branch = self.pick_branch()
            if branch is None:
                answer = frozenset(
                    a for a in self.program.atom_ids() if self.sign.get(a, -1) > 0
                )
                return SolveResult(CONSISTENT, answer_set=answer)
            self.dl += 1
            self.assign(branch, None)


def solve(
    program: Program,
    *,
    heuristic: str = "min-true",
    restarts: bool = False,
    seed: int = 0,
    proof_sink: IO[str] | None = None,
    budget: int = DEFAULT_BODY_BUDGET,
) -> SolveResult:
    """Solve a normal/choice/weight program, logging a checkable proof.

    Returns CONSISTENT with an answer set, INCONSISTENT with a proof, or
    UNKNOWN when a weight rule's body expansion exceeds the budget.
    """
    if heuristic not in HEURISTICS:
        raise SolveError(f"unknown heuristic {heuristic!r}")
    _check_scope(program)
    search = _Search(program, heuristic, random.Random(seed), proof_sink, budget)
    if search.catalog.deferred:
        return SolveResult(
            UNKNOWN, reason="weight rule expansion exceeds the body budget"
        )

    for body_id, body in search.registry.public_items():
        search.emit(Step("b", head=body_id, lits=sorted_lits(body)))

    init_conflict: int | None = None

    def attach_init(nogood: Nogood, tag: Step | None) -> None:
        nonlocal init_conflict
        conflict = search.attach(nogood, tag)
        if init_conflict is None:
            init_conflict = conflict

    for body_id, body in search.registry.public_items():
        for nogood in body_definition(body_id, body):
            attach_init(nogood, None)
    for atom, body_ids, nogood in forward_family(program, search.catalog, search.registry):
        attach_init(nogood, Step("s", head=atom, lits=body_ids))
    for nogood in backward_family(program, search.catalog, search.registry):
        body_id = next(l for l in nogood if l > 0)
        atom = next(-l for l in nogood if l < 0)
        attach_init(nogood, Step("c", head=body_id, lits=(atom,)))
    if init_conflict is not None:
        search.emit(Step("a"))
        return SolveResult(INCONSISTENT, proof=Proof(tuple(search.steps)))
    return search.run(restarts)
