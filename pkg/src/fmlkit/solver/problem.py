"""Finite-domain constraint problems: variables, domains and constraints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "SolverError",
    "DuplicateVariable",
    "EmptyDomain",
    "UnknownVariable",
    "Provenance",
    "Clause",
    "ExactlyOne",
    "CspConstraint",
    "CspProblem",
    "clause_constraint",
    "exactly_one_constraint",
]


class SolverError(ValueError):
    pass


class DuplicateVariable(SolverError):
    pass


class EmptyDomain(SolverError):
    pass


class UnknownVariable(SolverError):
    pass


@dataclass(frozen=True)
class Provenance:
    """Where a constraint came from: ``kind`` is structural, root or cross-tree."""

    kind: str
    label: str
    span: object = None

    def __str__(self) -> str:
        if self.span is None:
            return self.label
        return f"{self.label} (at {self.span})"


@dataclass(frozen=True)
class Clause:
    """Disjunction of existence literals ``(variable, positive)``.

    A positive literal holds when the variable's value is above zero.
    """

    literals: tuple[tuple[str, bool], ...]


@dataclass(frozen=True)
class ExactlyOne:
    """``guard`` is not above zero, or exactly one of ``members`` is."""

    guard: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class CspConstraint:
    """A predicate over the values of ``scope``, called positionally.

    ``form`` optionally restates the predicate in existence-literal terms so
    the native kernel can evaluate it without calling back into Python; it
    must agree with ``predicate``.
    """

    scope: tuple[str, ...]
    predicate: Callable[..., bool]
    provenance: Provenance | None = None
    form: Clause | ExactlyOne | None = None


def _dedupe(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(names))


def clause_constraint(literals: Sequence[tuple[str, bool]], provenance=None) -> CspConstraint:
    literals = tuple(literals)
    scope = _dedupe(name for name, _ in literals)
    where = {name: i for i, name in enumerate(scope)}
    checks = tuple((where[name], positive) for name, positive in literals)

    def predicate(*values):
        for i, positive in checks:
            if (values[i] > 0) == positive:
                return True
        return False

    # the two-literal shape covers every parent/child rule; keep it cheap
    if len(checks) == 2 and len(scope) == 2:
        (i, pi), (j, pj) = checks
        if (i, j) == (0, 1):
            if (pi, pj) == (False, True):
                predicate = lambda a, b: a <= 0 or b > 0  # noqa: E731
            elif (pi, pj) == (False, False):
                predicate = lambda a, b: a <= 0 or b <= 0  # noqa: E731
            elif (pi, pj) == (True, True):
                predicate = lambda a, b: a > 0 or b > 0  # noqa: E731

    return CspConstraint(scope, predicate, provenance, Clause(literals))


def exactly_one_constraint(guard: str, members: Sequence[str], provenance=None) -> CspConstraint:
    members = tuple(members)
    scope = _dedupe((guard, *members))
    where = {name: i for i, name in enumerate(scope)}
    g = where[guard]
    idx = tuple(where[m] for m in members)

    def predicate(*values):
        if values[g] <= 0:
            return True
        return sum(1 for i in idx if values[i] > 0) == 1

    return CspConstraint(scope, predicate, provenance, ExactlyOne(guard, members))


def _normalize_domain(values: Iterable) -> tuple:
    values = tuple(values)
    if len(set(values)) != len(values):
        raise SolverError(f"domain values must be distinct: {values!r}")
    if all(type(v) is int for v in values):
        values = tuple(sorted(values))
    return values


class CspProblem:
    """Variables with finite domains plus constraints, both kept in insertion order.

    Integer domains are iterated in ascending order; other domains in the
    order given.
    """

    def __init__(self):
        self._domains: dict[str, tuple] = {}
        self._constraints: list[CspConstraint] = []

    def add_variable(self, name: str, domain: Iterable) -> CspProblem:
        if name in self._domains:
            raise DuplicateVariable(name)
        values = _normalize_domain(domain)
        if not values:
            raise EmptyDomain(name)
        self._domains[name] = values
        return self

    def add_constraint(
        self,
        scope: Sequence[str] | CspConstraint,
        predicate: Callable[..., bool] | None = None,
        provenance: Provenance | None = None,
    ) -> CspProblem:
        if isinstance(scope, CspConstraint):
            constraint = scope
        else:
            if predicate is None:
                raise TypeError("add_constraint() needs a predicate")
            constraint = CspConstraint(tuple(scope), predicate, provenance)
        for name in constraint.scope:
            if name not in self._domains:
                raise UnknownVariable(name)
        self._constraints.append(constraint)
        return self

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(self._domains)

    @property
    def domains(self) -> Mapping[str, tuple]:
        return dict(self._domains)

    def domain(self, name: str) -> tuple:
        return self._domains[name]

    @property
    def constraints(self) -> tuple[CspConstraint, ...]:
        return tuple(self._constraints)

    def restricted(self, narrowed: Mapping[str, Iterable]) -> CspProblem:
        """Copy with some domains narrowed, keeping each domain's value order."""
        out = CspProblem()
        for name, values in self._domains.items():
            if name in narrowed:
                keep = set(narrowed[name])
                values = tuple(v for v in values if v in keep)
                if not values:
                    raise EmptyDomain(name)
            out._domains[name] = values
        out._constraints = list(self._constraints)
        return out

    def __repr__(self) -> str:
        return f"CspProblem({len(self._domains)} variables, {len(self._constraints)} constraints)"
