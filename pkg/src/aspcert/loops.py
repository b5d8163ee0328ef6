"""Positive dependency graph, loops, external bodies, and unfounded sets.

The dependency graph has an edge (b, a) whenever b occurs positively in the
body of a rule with a in the head (for weight rules: positively weighted).
A loop is a nonempty atom set whose induced subgraph is strongly connected
and contains at least one edge, so singletons need a self-edge.
"""

from __future__ import annotations

from itertools import combinations
from typing import Collection, Iterable

import networkx as nx

from .core import Nogood, Program, Rule, RuleKind
from .completion import BodyCatalog, BodyRegistry

MAX_LOOP_ENUMERATION = 1 << 16


def dependency_graph(program: Program) -> nx.DiGraph:
    """Positive atom dependencies; every atom is a node."""
    graph = nx.DiGraph()
    graph.add_nodes_from(program.atom_ids())
    for rule in program.rules:
        for source in rule.pos_body:
            for target in rule.head:
                graph.add_edge(source, target)
    return graph


def is_loop(graph: nx.DiGraph, atoms: Collection[int]) -> bool:
    """Check the loop property on the induced subgraph."""
    if not atoms or not all(graph.has_node(a) for a in atoms):
        return False
    sub = graph.subgraph(atoms)
    return sub.number_of_edges() >= 1 and nx.is_strongly_connected(sub)


def cyclic_atoms(graph: nx.DiGraph) -> frozenset[int]:
    """Atoms on some positive cycle (members of loops)."""
    out: set[int] = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            out.update(component)
        else:
            (atom,) = component
            if graph.has_edge(atom, atom):
                out.add(atom)
    return frozenset(out)


def has_loops(program: Program) -> bool:
    return bool(cyclic_atoms(dependency_graph(program)))


def all_loops(program: Program) -> list[frozenset[int]]:
    """Enumerate every loop; loops live inside one strongly connected component."""
    graph = dependency_graph(program)
    loops: list[frozenset[int]] = []
    total = 0
    for component in nx.strongly_connected_components(graph):
        members = sorted(component)
        total += 1 << len(members)
        if total > MAX_LOOP_ENUMERATION:
            raise ValueError("loop enumeration limit exceeded")
        for size in range(1, len(members) + 1):
            for subset in combinations(members, size):
                if is_loop(graph, subset):
                    loops.append(frozenset(subset))
    return loops


def external_bodies(
    program: Program, catalog: BodyCatalog, atoms: Collection[int]
) -> list[frozenset[int]]:
    """Bodies that can support an atom of the set from outside it."""
    atom_set = set(atoms)
    out: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for atom in sorted(atom_set):
        for body in catalog.bodies_of(atom):
            if body in seen:
                continue
            if not any(lit > 0 and lit in atom_set for lit in body):
                seen.add(body)
                out.append(body)
    return out


def loop_nogood(atom: int, external_body_ids: Iterable[int]) -> Nogood:
    """A loop atom cannot be true with every external body false."""
    return frozenset({atom, *(-b for b in external_body_ids)})


def all_loop_nogoods(
    program: Program, catalog: BodyCatalog, registry: BodyRegistry
) -> list[Nogood]:
    """Every loop nogood of the program (one per loop atom per loop)."""
    out: list[Nogood] = []
    for loop in all_loops(program):
        ids = [registry.id_of(b) for b in external_bodies(program, catalog, loop)]
        out.extend(loop_nogood(atom, ids) for atom in sorted(loop))
    return out


def _atomized(program: Program, assignment: Iterable[int], registry: BodyRegistry | None) -> set[int]:
    """Project an assignment to atom literals; true body vars expand, false drop."""
    out: set[int] = set()
    for lit in assignment:
        var = abs(lit)
        if var <= program.atom_count:
            out.add(lit)
        elif registry is not None and registry.has_id(var):
            if lit > 0:
                out.update(registry.lits_of(var))
        else:
            raise ValueError(f"unknown variable {var} in assignment")
    return out


def _rule_can_fire_externally(rule: Rule, atomized: set[int], unfounded: set[int]) -> bool:
    """Can the body hold under the assignment without true atoms of the set?"""
    usable = [
        lit
        for lit in rule.body_literals()
        if -lit not in atomized and not (lit > 0 and lit in unfounded)
    ]
    if rule.kind is RuleKind.WEIGHT:
        return sum(rule.weight_of(lit) for lit in usable) >= rule.bound
    return len(usable) == len(rule.body_literals())


def is_unfounded_set(
    program: Program,
    assignment: Iterable[int],
    atoms: Collection[int],
    registry: BodyRegistry | None = None,
) -> bool:
    """Check that no rule can support any atom of the set under the assignment.

    Each rule with a head atom in the set must be neutralized: its body cannot
    fire without the set (a literal is contradicted, required positive atoms
    lie in the set, or a weight bound becomes unreachable), or, for non-choice
    rules, the rule is already satisfied by a true head atom outside the set.
    """
    unfounded = set(atoms)
    if not unfounded or not all(1 <= a <= program.atom_count for a in unfounded):
        return False
    atom_lits = _atomized(program, assignment, registry)
    for rule in program.rules:
        if not unfounded.intersection(rule.head):
            continue
        if rule.kind is not RuleKind.CHOICE and any(
            a in atom_lits for a in rule.head if a not in unfounded
        ):
            continue
        if _rule_can_fire_externally(rule, atom_lits, unfounded):
            return False
    return True
