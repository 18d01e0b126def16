"""Finite-domain constraint solver with a compiled search kernel."""

from .problem import (
    Clause,
    CspConstraint,
    CspProblem,
    DuplicateVariable,
    EmptyDomain,
    ExactlyOne,
    Provenance,
    SolverError,
    UnknownVariable,
    clause_constraint,
    exactly_one_constraint,
)
from .search import (
    SolverStats,
    available_backends,
    count_solutions,
    default_backend,
    iter_solutions,
    solve_all,
    solve_first,
)

__all__ = [
    "Clause",
    "CspConstraint",
    "CspProblem",
    "DuplicateVariable",
    "EmptyDomain",
    "ExactlyOne",
    "Provenance",
    "SolverError",
    "UnknownVariable",
    "clause_constraint",
    "exactly_one_constraint",
    "SolverStats",
    "available_backends",
    "count_solutions",
    "default_backend",
    "iter_solutions",
    "solve_all",
    "solve_first",
]
