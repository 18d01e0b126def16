"""Lowering of a resolved feature model to a finite-domain CSP.

Every feature becomes an integer variable holding its clone count (0 means
"not selected"); every attribute becomes a singleton variable named
``Feature.attribute``. Group relations are emitted as implications that
apply when the parent is selected, and cross-tree constraints become
predicates over the variables they mention.
"""

from __future__ import annotations

import operator
from typing import Callable

from .model import ExprType, ResolvedModel, TypedExpr
from .printer import format_expr, format_value
from .solver import (
    CspConstraint,
    CspProblem,
    Provenance,
    clause_constraint,
    exactly_one_constraint,
)
from .syntax import (
    And,
    Arith,
    AttributeRef,
    Cardinality,
    Compare,
    FeatureNode,
    FeatureRef,
    Group,
    GroupKind,
    Implies,
    Literal,
    Not,
    Or,
    Symbol,
)

__all__ = [
    "exists",
    "feature_domain",
    "lower_group",
    "lower_cross_tree",
    "compile_model",
    "dump_csp",
]

_COMPARE = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
_ARITH = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def exists(count: int) -> bool:
    return count > 0


def feature_domain(card: Cardinality) -> tuple[int, ...]:
    """``{0} ∪ {max(1, min) .. max}`` in ascending order."""
    return (0, *range(max(1, card.min), card.max + 1))


def lower_group(parent: FeatureNode, group: Group | None = None) -> list[CspConstraint]:
    group = group if group is not None else parent.group
    p = parent.name
    names = [child.name for child in group.children]
    out = [
        clause_constraint(
            [(c, False), (p, True)], Provenance("structural", f"parent({c} -> {p})")
        )
        for c in names
    ]
    if group.kind is GroupKind.ALL:
        out.extend(
            clause_constraint(
                [(p, False), (child.name, True)],
                Provenance("structural", f"mandatory({p} -> {child.name})"),
            )
            for child in group.children
            if child.cardinality.min >= 1
        )
    elif group.kind is GroupKind.MOREOF:
        out.append(
            clause_constraint(
                [(p, False), *((c, True) for c in names)],
                Provenance("structural", f"moreof({p})"),
            )
        )
    else:
        out.append(exactly_one_constraint(p, names, Provenance("structural", f"oneof({p})")))
    return out


# -- cross-tree expressions -------------------------------------------------


def _variable(expr) -> str:
    return expr.name if isinstance(expr, FeatureRef) else expr.dotted


def _scope(typed: TypedExpr, out: dict) -> dict:
    if isinstance(typed.expr, (FeatureRef, AttributeRef)):
        out.setdefault(_variable(typed.expr), None)
    for sub in typed.operands:
        _scope(sub, out)
    return out


def _evaluator(typed: TypedExpr, slot: dict[str, int]) -> Callable[[tuple], object]:
    e = typed.expr
    if isinstance(e, FeatureRef):
        i = slot[e.name]
        if typed.type is ExprType.BOOL:
            return lambda v: v[i] > 0
        return lambda v: v[i]
    if isinstance(e, AttributeRef):
        i = slot[e.dotted]
        return lambda v: v[i]
    if isinstance(e, Literal):
        const = e.value
        return lambda v: const
    if isinstance(e, Not):
        f = _evaluator(typed.operands[0], slot)
        return lambda v: not f(v)
    f = _evaluator(typed.operands[0], slot)
    g = _evaluator(typed.operands[1], slot)
    if isinstance(e, And):
        return lambda v: f(v) and g(v)
    if isinstance(e, Or):
        return lambda v: f(v) or g(v)
    if isinstance(e, Implies):
        return lambda v: (not f(v)) or g(v)
    if isinstance(e, Compare):
        op = _COMPARE[e.op]
    elif isinstance(e, Arith):
        op = _ARITH[e.op]
    else:
        raise TypeError(f"not an expression node: {e!r}")
    return lambda v: op(f(v), g(v))


def _conjunction(typed: TypedExpr):
    """Existence literals whose conjunction equals ``typed``, or None."""
    e = typed.expr
    if isinstance(e, FeatureRef) and typed.type is ExprType.BOOL:
        return [(e.name, True)]
    if isinstance(e, And):
        a, b = (_conjunction(t) for t in typed.operands)
        return None if a is None or b is None else a + b
    if isinstance(e, Not):
        inner = _disjunction(typed.operands[0])
        return None if inner is None else [(n, not p) for n, p in inner]
    return None


def _disjunction(typed: TypedExpr):
    """Existence literals whose disjunction equals ``typed``, or None."""
    e = typed.expr
    if isinstance(e, FeatureRef) and typed.type is ExprType.BOOL:
        return [(e.name, True)]
    if isinstance(e, Or):
        a, b = (_disjunction(t) for t in typed.operands)
        return None if a is None or b is None else a + b
    if isinstance(e, Implies):
        a = _conjunction(typed.operands[0])
        b = _disjunction(typed.operands[1])
        return None if a is None or b is None else [(n, not p) for n, p in a] + b
    if isinstance(e, Not):
        inner = _conjunction(typed.operands[0])
        return None if inner is None else [(n, not p) for n, p in inner]
    return None


def lower_cross_tree(typed: TypedExpr) -> CspConstraint:
    """Turn a ``BOOL``-typed constraint into a predicate over its variables.

    A division by zero makes the predicate false for that assignment.
    """
    provenance = Provenance("cross-tree", format_expr(typed.expr), typed.span)
    literals = _disjunction(typed)
    if literals:
        return clause_constraint(literals, provenance)

    scope = tuple(_scope(typed, {}))
    root = _evaluator(typed, {name: i for i, name in enumerate(scope)})

    def predicate(*values):
        try:
            return bool(root(values))
        except ZeroDivisionError:
            return False

    return CspConstraint(scope, predicate, provenance)


def compile_model(model: ResolvedModel) -> CspProblem:
    """Variables in feature pre-order (attributes right after their feature);
    constraints: structural, then root, then cross-tree in source order."""
    problem = CspProblem()
    for name in model.preorder:
        node = model.features[name]
        problem.add_variable(name, feature_domain(node.cardinality))
        for attr in node.attributes:
            problem.add_variable(f"{name}.{attr.name}", (attr.value.value,))

    for name in model.preorder:
        node = model.features[name]
        if node.group is not None:
            for con in lower_group(node, node.group):
                problem.add_constraint(con)

    root = model.root.name
    problem.add_constraint(clause_constraint([(root, True)], Provenance("root", f"root({root})")))

    for typed in model.constraints:
        problem.add_constraint(lower_cross_tree(typed))
    return problem


def _format_domain_value(value) -> str:
    if isinstance(value, Symbol):
        return value.name
    return format_value(value)


def dump_csp(problem: CspProblem) -> str:
    """Stable line-oriented listing of variables and constraints."""
    lines = []
    for name in problem.variables:
        values = ", ".join(_format_domain_value(v) for v in problem.domain(name))
        lines.append(f"var {name} : {{{values}}}")
    for con in problem.constraints:
        prov = con.provenance
        kind = prov.kind if prov else "custom"
        label = prov.label if prov else "<predicate>"
        lines.append(f"constraint {kind} [{', '.join(con.scope)}] {label}")
    return "\n".join(lines) + "\n"
