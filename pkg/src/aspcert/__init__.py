"""Toolkit for ground answer-set programs: a conflict-driven solver that
emits machine-checkable inconsistency proofs, an independent polynomial-time
proof checker, and a brute-force semantic oracle for cross-verification."""

from .checker import CheckerState, CheckResult, ProofFormatError, check
from .completion import (
    DEFAULT_BODY_BUDGET,
    BodyCatalog,
    BodyRegistry,
    BudgetError,
    backward_family,
    backward_nogood,
    body_catalog,
    body_definition,
    forward_family,
    forward_nogood,
    induced_bodies_of_rule,
    minimal_weight_sets,
    normalize_short_body,
)
from .core import (
    Assignment,
    Nogood,
    Program,
    Rule,
    RuleKind,
    basic_rule,
    choice_rule,
    complement,
    induced_assignment,
    weight_rule,
)
from .fuzz import Discrepancy, differential_run, random_program, random_tight_program
from .loops import (
    all_loop_nogoods,
    all_loops,
    cyclic_atoms,
    dependency_graph,
    external_bodies,
    has_loops,
    is_loop,
    is_unfounded_set,
    loop_nogood,
)
from .oracle import OracleError, entails, enumerate_answer_sets, is_answer_set
from .program_io import ParseError, emit_dictionary, emit_program, parse_program
from .proof import (
    Proof,
    ProofSyntaxError,
    Step,
    declare_bodies,
    parse_proof,
    serialize_proof,
    serialize_step,
    sorted_lits,
)
from .propagation import (
    PropagationResult,
    WeightRulePropagator,
    is_rup,
    rup_run,
    unit_propagate,
    weight_propagate,
)
from .solver import (
    CONSISTENT,
    HEURISTICS,
    INCONSISTENT,
    UNKNOWN,
    SolveError,
    SolveResult,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BodyCatalog",
    "BodyRegistry",
    "BudgetError",
    "CheckResult",
    "CheckerState",
    "CONSISTENT",
    "DEFAULT_BODY_BUDGET",
    "Discrepancy",
    "HEURISTICS",
    "INCONSISTENT",
    "Nogood",
    "OracleError",
    "ParseError",
    "Program",
    "PropagationResult",
    "Proof",
    "ProofFormatError",
    "ProofSyntaxError",
    "Rule",
    "RuleKind",
    "SolveError",
    "SolveResult",
    "Step",
    "UNKNOWN",
    "WeightRulePropagator",
    "all_loop_nogoods",
    "all_loops",
    "backward_family",
    "backward_nogood",
    "basic_rule",
    "body_catalog",
    "body_definition",
    "check",
    "choice_rule",
    "complement",
    "cyclic_atoms",
    "declare_bodies",
    "dependency_graph",
    "differential_run",
    "emit_dictionary",
    "emit_program",
    "entails",
    "enumerate_answer_sets",
    "external_bodies",
    "forward_family",
    "forward_nogood",
    "has_loops",
    "induced_assignment",
    "induced_bodies_of_rule",
    "is_answer_set",
    "is_loop",
    "is_rup",
    "is_unfounded_set",
    "loop_nogood",
    "minimal_weight_sets",
    "normalize_short_body",
    "parse_program",
    "parse_proof",
    "random_program",
    "random_tight_program",
    "rup_run",
    "serialize_proof",
    "serialize_step",
    "solve",
    "sorted_lits",
    "unit_propagate",
    "weight_propagate",
    "weight_rule",
]
