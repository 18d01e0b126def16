"""Complete solution enumeration over a :class:`CspProblem`.

Two interchangeable kernels implement the search: a compiled one
(``_kernel``) and a pure-Python one (``_pysearch``). The compiled kernel is
used when it imported; both produce identical solution sequences and
identical counters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from . import _pysearch
from .problem import Clause, CspProblem, ExactlyOne

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None

__all__ = [
    "SolverStats",
    "available_backends",
    "default_backend",
    "iter_solutions",
    "solve_all",
    "solve_first",
    "count_solutions",
]

# conflict bitsets are n*n bits; beyond this the Python kernel is used
_NATIVE_MAX_CONFLICT_BYTES = 256 * 1024 * 1024


@dataclass
class SolverStats:
    nodes: int = 0
    checks: int = 0
    solutions: int = 0


def available_backends() -> tuple[str, ...]:
    return ("native", "python") if _kernel is not None else ("python",)


def default_backend() -> str:
    return available_backends()[0]


def _exists_ready(domain: tuple) -> bool:
    # index 0 must hold 0 and every other value must be a positive int
    if not domain or domain[0] != 0 or type(domain[0]) is not int:
        return False
    return all(type(v) is int and v > 0 for v in domain[1:])


class _Plan:
    __slots__ = ("names", "domains", "nullary", "levels")

    def __init__(self, problem: CspProblem, native: bool):
        self.names = problem.variables
        self.domains = [problem.domain(name) for name in self.names]
        position = {name: i for i, name in enumerate(self.names)}
        ready = {name: _exists_ready(problem.domain(name)) for name in self.names} if native else {}
        self.nullary = []
        self.levels = [[] for _ in self.names]
        for con in problem.constraints:
            scope = tuple(position[name] for name in con.scope)
            if not scope:
                self.nullary.append(con.predicate)
                continue
            level = max(scope)
            if not native:
                self.levels[level].append((scope, con.predicate))
                continue
            entry = (0, scope, con.predicate, (), ())
            form = con.form
            if isinstance(form, Clause) and all(ready[v] for v, _ in form.literals):
                entry = (
                    1,
                    scope,
                    con.predicate,
                    tuple(position[v] for v, _ in form.literals),
                    tuple(p for _, p in form.literals),
                )
            elif isinstance(form, ExactlyOne) and all(
                ready[v] for v in (form.guard, *form.members)
            ):
                members = (form.guard, *form.members)
                entry = (
                    2,
                    scope,
                    con.predicate,
                    tuple(position[v] for v in members),
                    (True,) * len(members),
                )
            self.levels[level].append(entry)

    def nullary_ok(self) -> bool:
        return all(pred() for pred in self.nullary)


def _resolve_backend(backend: str | None, n: int) -> str:
    if backend is None:
        backend = default_backend()
        words = (n + 63) // 64
        if backend == "native" and (n + 1) * words * 8 > _NATIVE_MAX_CONFLICT_BYTES:
            backend = "python"
    if backend not in ("native", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "native" and _kernel is None:
        raise RuntimeError("native solver kernel is not built")
    return backend


def _generate_and_test(problem: CspProblem, stats: SolverStats) -> Iterator[tuple]:
    names = problem.variables
    position = {name: i for i, name in enumerate(names)}
    domains = [problem.domain(n) for n in names]
    cons = [(tuple(position[v] for v in c.scope), c.predicate) for c in problem.constraints]
    for combo in itertools.product(*(range(len(d)) for d in domains)):
        values = [d[k] for d, k in zip(domains, combo)]
        stats.nodes += 1
        ok = True
        for scope, pred in cons:
            stats.checks += 1
            if not pred(*(values[j] for j in scope)):
                ok = False
                break
        if ok:
            stats.solutions += 1
            yield combo


def _index_solutions(problem, backend, stats, prune) -> tuple[tuple, Iterator[tuple]]:
    if stats is None:
        stats = SolverStats()
    if not prune:
        return problem.variables, _generate_and_test(problem, stats)
    backend = _resolve_backend(backend, len(problem.variables))
    plan = _Plan(problem, native=backend == "native")
    if not plan.nullary_ok():
        return plan.names, iter(())
    if backend == "native":
        search = _kernel.Search(plan.domains, plan.levels)
    else:
        search = _pysearch.Search(plan.domains, plan.levels)

    base = (stats.nodes, stats.checks, stats.solutions)

    def sync():
        stats.nodes = base[0] + search.nodes
        stats.checks = base[1] + search.checks
        stats.solutions = base[2] + search.solutions

    def run():
        try:
            for combo in search:
                sync()
                yield combo
        finally:
            sync()

    return plan.names, run()


def iter_solutions(
    problem: CspProblem,
    *,
    backend: str | None = None,
    stats: SolverStats | None = None,
    prune: bool = True,
) -> Iterator[dict]:
    """Lazily yield every satisfying assignment in search order.

    ``prune=False`` switches to plain generate-and-test over the cartesian
    product (same solution set and order, no early pruning).
    """
    names, combos = _index_solutions(problem, backend, stats, prune)
    domains = [problem.domain(n) for n in names]
    for combo in combos:
        yield {name: dom[k] for name, dom, k in zip(names, domains, combo)}


def solve_all(problem: CspProblem, **kwargs) -> list[dict]:
    return list(iter_solutions(problem, **kwargs))


def solve_first(problem: CspProblem, **kwargs) -> dict | None:
    return next(iter_solutions(problem, **kwargs), None)


def count_solutions(
    problem: CspProblem,
    *,
    backend: str | None = None,
    stats: SolverStats | None = None,
    prune: bool = True,
) -> int:
    if stats is None:
        stats = SolverStats()
    if not prune:
        return sum(1 for _ in _generate_and_test(problem, stats))
    backend = _resolve_backend(backend, len(problem.variables))
    plan = _Plan(problem, native=backend == "native")
    if not plan.nullary_ok():
        return 0
    if backend == "native":
        search = _kernel.Search(plan.domains, plan.levels)
    else:
        search = _pysearch.Search(plan.domains, plan.levels)
    total = search.count()
    stats.nodes += search.nodes
    stats.checks += search.checks
    stats.solutions += search.solutions
    return total
