"""Product-line analyses over a resolved model: validity, product
enumeration, configuration checking, dead and core features."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .lowering import compile_model, feature_domain
from .model import ResolvedModel
from .solver import CspProblem, Provenance, count_solutions, iter_solutions, solve_first

__all__ = [
    "AnalysisError",
    "UnknownFeature",
    "CountOutOfDomain",
    "VoidModel",
    "Product",
    "Verdict",
    "valid_model",
    "iter_products",
    "enumerate_products",
    "count_products",
    "check_configuration",
    "dead_features",
    "core_features",
]


class AnalysisError(ValueError):
    pass


class UnknownFeature(AnalysisError):
    def __init__(self, name: str):
        super().__init__(f"unknown feature {name!r}")
        self.name = name


class CountOutOfDomain(AnalysisError):
    def __init__(self, name: str, count: int, domain: tuple):
        super().__init__(f"count {count} for {name!r} is outside {{{', '.join(map(str, domain))}}}")
        self.name = name
        self.count = count
        self.domain = domain


class VoidModel(AnalysisError):
    def __init__(self):
        super().__init__("the model has no valid products")


@dataclass(frozen=True)
class Product:
    """Clone count per feature and value per ``Feature.attribute``, both in
    feature pre-order."""

    features: Mapping[str, int]
    attributes: Mapping[str, object] = field(default_factory=dict)

    def selected(self) -> list[str]:
        return [name for name, count in self.features.items() if count > 0]


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witnesses: tuple[Provenance, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def _problem(model: ResolvedModel) -> CspProblem:
    return compile_model(model)


def _project(model: ResolvedModel, assignment: dict) -> Product:
    features = {name: assignment[name] for name in model.preorder}
    attributes = {}
    for name in model.preorder:
        for attr in model.features[name].attributes:
            key = f"{name}.{attr.name}"
            attributes[key] = assignment[key]
    return Product(features, attributes)


def valid_model(model: ResolvedModel, *, backend: str | None = None) -> bool:
    return solve_first(_problem(model), backend=backend) is not None


def iter_products(model: ResolvedModel, *, backend: str | None = None) -> Iterator[Product]:
    for assignment in iter_solutions(_problem(model), backend=backend):
        yield _project(model, assignment)


def enumerate_products(
    model: ResolvedModel, limit: int | None = None, *, backend: str | None = None
) -> list[Product]:
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    return list(itertools.islice(iter_products(model, backend=backend), limit))


def count_products(model: ResolvedModel, *, backend: str | None = None) -> int:
    return count_solutions(_problem(model), backend=backend)


def _narrowing(model: ResolvedModel, query: Mapping[str, int]) -> dict[str, tuple]:
    narrowed = {}
    for name, count in query.items():
        if name not in model.features:
            raise UnknownFeature(name)
        domain = feature_domain(model.features[name].cardinality)
        if count not in domain:
            raise CountOutOfDomain(name, count, domain)
        narrowed[name] = (count,)
    return narrowed


def _locally_violated(problem: CspProblem, con) -> bool:
    """True when no combination of the (narrowed) scope values satisfies ``con``."""
    domains = [problem.domain(name) for name in con.scope]
    return not any(con.predicate(*combo) for combo in itertools.product(*domains))


def check_configuration(
    model: ResolvedModel, query: Mapping[str, int], *, backend: str | None = None
) -> Verdict:
    """Is there a product agreeing with every count in ``query``?

    When there is not, the witnesses are the constraints that fail under every
    choice of their unfixed variables; if none fails on its own, the
    constraint that first turns the search unsatisfiable (in declaration
    order) is reported.
    """
    full = _problem(model)
    problem = full.restricted(_narrowing(model, query))
    if solve_first(problem, backend=backend) is not None:
        return Verdict(True)

    constraints = problem.constraints
    witnesses = [c.provenance for c in constraints if _locally_violated(problem, c)]
    if not witnesses:
        # smallest prefix of the constraint list that is already unsatisfiable
        lo, hi = 0, len(constraints)
        while lo < hi:
            mid = (lo + hi) // 2
            prefix = CspProblem()
            for name in problem.variables:
                prefix.add_variable(name, problem.domain(name))
            for con in constraints[: mid + 1]:
                prefix.add_constraint(con)
            if solve_first(prefix, backend=backend) is None:
                hi = mid
            else:
                lo = mid + 1
        witnesses = [constraints[lo].provenance]
    return Verdict(False, tuple(witnesses))


def _feature_scan(model: ResolvedModel, backend, want_present: bool) -> set[str]:
    """Features that never (``want_present``) / always (not ``want_present``)
    take count 0 across all products."""
    problem = _problem(model)
    first = solve_first(problem, backend=backend)
    if first is None:
        raise VoidModel()
    seen = [first]

    def settled(name: str) -> bool:
        if want_present:
            return any(s[name] > 0 for s in seen)
        return any(s[name] == 0 for s in seen)

    out = set()
    for name in model.preorder:
        if settled(name):
            continue
        domain = problem.domain(name)
        keep = [v for v in domain if (v > 0) == want_present]
        witness = None
        if keep:
            witness = solve_first(problem.restricted({name: keep}), backend=backend)
        if witness is None:
            out.add(name)
        else:
            seen.append(witness)
    return out


def dead_features(model: ResolvedModel, *, backend: str | None = None) -> set[str]:
    """Features selected in no product."""
    return _feature_scan(model, backend, want_present=True)


def core_features(model: ResolvedModel, *, backend: str | None = None) -> set[str]:
    """Features selected in every product."""
    return _feature_scan(model, backend, want_present=False)
