"""Exact solver, enumerator and verification toolkit for knot-free vertex deletion."""

from .digraph import (
    Digraph,
    InternalInvariantError,
    KnotReport,
    ParseError,
    VerificationReport,
    find_knots,
    is_knot_free,
    parse_digraph,
    scc_partition,
    serialize_digraph,
    verify_solution,
)
from .enumerator import MinimalFamily, enumerate_minimal
from .generators import gen_random, gen_triangles
from .oracle import CapExceededError, oracle_enumerate_minimal, oracle_min
from .reach import (
    SEMI_DECIDED,
    UNDECIDED,
    Instance,
    UpdateResult,
    apply_update,
    candidate_sinks,
    closed_reach,
    drop_value,
    in_reach,
    in_reach_all,
    out_reach,
    surviving_set,
)
from .solver import DropViolation, SearchStats, Solution, run_search, solve

__all__ = [
    "Digraph",
    "DropViolation",
    "Instance",
    "InternalInvariantError",
    "KnotReport",
    "MinimalFamily",
    "ParseError",
    "CapExceededError",
    "SEMI_DECIDED",
    "SearchStats",
    "Solution",
    "UNDECIDED",
    "UpdateResult",
    "VerificationReport",
    "apply_update",
    "candidate_sinks",
    "closed_reach",
    "drop_value",
    "enumerate_minimal",
    "find_knots",
    "gen_random",
    "gen_triangles",
    "in_reach",
    "in_reach_all",
    "is_knot_free",
    "oracle_enumerate_minimal",
    "oracle_min",
    "out_reach",
    "parse_digraph",
    "scc_partition",
    "serialize_digraph",
    "run_search",
    "solve",
    "surviving_set",
    "verify_solution",
]
