"""Name resolution and static typing of a parsed feature model."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import (
    BadCardinality,
    DuplicateAttribute,
    DuplicateFeature,
    FmlTypeError,
    UnknownReference,
)
from .syntax import (
    And,
    Arith,
    AttributeDecl,
    AttributeRef,
    Compare,
    FeatureModelAst,
    FeatureNode,
    FeatureRef,
    Implies,
    Literal,
    LiteralKind,
    Not,
    Or,
)

__all__ = ["ExprType", "TypedExpr", "ResolvedModel", "resolve", "typecheck"]


class ExprType(enum.Enum):
    BOOL = "bool"
    INT = "int"
    FLOAT = "float"
    STRING = "string"
    SYMBOL = "symbol"

    @property
    def numeric(self) -> bool:
        return self in (ExprType.INT, ExprType.FLOAT)


_LITERAL_TYPES = {
    LiteralKind.INT: ExprType.INT,
    LiteralKind.FLOAT: ExprType.FLOAT,
    LiteralKind.STRING: ExprType.STRING,
    LiteralKind.BOOL: ExprType.BOOL,
    LiteralKind.SYMBOL: ExprType.SYMBOL,
}

# types that support < <= > >= besides the numeric ones
_ORDERED = (ExprType.STRING,)


@dataclass(frozen=True)
class TypedExpr:
    """An expression node with its static type and typed operands.

    A ``FeatureRef`` typed ``BOOL`` stands for "clone count > 0"; typed
    ``INT`` it is the clone count itself.
    """

    expr: object
    type: ExprType
    operands: tuple[TypedExpr, ...] = ()

    @property
    def span(self):
        return self.expr.span


@dataclass(frozen=True)
class ResolvedModel:
    ast: FeatureModelAst
    features: Mapping[str, FeatureNode]
    parents: Mapping[str, str | None]
    attributes: Mapping[tuple[str, str], AttributeDecl]
    constraints: tuple[TypedExpr, ...]
    preorder: tuple[str, ...]

    @property
    def root(self) -> FeatureNode:
        return self.ast.root

    def children(self, name: str) -> tuple[str, ...]:
        group = self.features[name].group
        return () if group is None else tuple(c.name for c in group.children)

    def attributes_of(self, name: str) -> tuple[AttributeDecl, ...]:
        return self.features[name].attributes


def resolve(ast: FeatureModelAst) -> ResolvedModel:
    """Build name tables, validate cardinalities and type every constraint.

    Nothing is returned unless every check passes.
    """
    features: dict[str, FeatureNode] = {}
    parents: dict[str, str | None] = {}
    attributes: dict[tuple[str, str], AttributeDecl] = {}

    stack: list[tuple[FeatureNode, str | None]] = [(ast.root, None)]
    while stack:
        node, parent = stack.pop()
        if node.name in features:
            raise DuplicateFeature(node.name, features[node.name].span, node.span)
        card = node.cardinality
        if not (0 <= card.min <= card.max and card.max >= 1):
            raise BadCardinality(card, card.span or node.span)
        features[node.name] = node
        parents[node.name] = parent
        for attr in node.attributes:
            key = (node.name, attr.name)
            if key in attributes:
                raise DuplicateAttribute(node.name, attr.name, attr.span)
            attributes[key] = attr
        if node.group is not None:
            stack.extend((child, node.name) for child in reversed(node.group.children))

    for expr in ast.constraints:
        _bind(expr, features, attributes)
    typed = _typecheck_all(ast.constraints, attributes)

    return ResolvedModel(
        ast=ast,
        features=MappingProxyType(features),
        parents=MappingProxyType(parents),
        attributes=MappingProxyType(attributes),
        constraints=typed,
        preorder=tuple(features),
    )


def typecheck(model: ResolvedModel) -> list[TypedExpr]:
    """Type the model's constraints afresh; every root comes out ``BOOL``."""
    return list(_typecheck_all(model.ast.constraints, model.attributes))


def _bind(expr, features, attributes) -> None:
    if isinstance(expr, FeatureRef):
        if expr.name not in features:
            raise UnknownReference(expr.name, expr.span)
    elif isinstance(expr, AttributeRef):
        if expr.feature not in features:
            raise UnknownReference(expr.feature, expr.span)
        if (expr.feature, expr.attribute) not in attributes:
            raise UnknownReference(expr.dotted, expr.span)
    elif isinstance(expr, Not):
        _bind(expr.operand, features, attributes)
    elif not isinstance(expr, Literal):
        _bind(expr.left, features, attributes)
        _bind(expr.right, features, attributes)


def _typecheck_all(exprs, attributes) -> tuple[TypedExpr, ...]:
    out = []
    for expr in exprs:
        typed = _check(expr, attributes, boolean=True)
        if typed.type is not ExprType.BOOL:
            raise FmlTypeError(expr.span, "bool", typed.type.value)
        out.append(typed)
    return tuple(out)


def _require(typed: TypedExpr, ok: bool, expected: str) -> None:
    if not ok:
        raise FmlTypeError(typed.span, expected, typed.type.value)


def _check(expr, attributes, boolean: bool) -> TypedExpr:
    # boolean: the node is a direct operand of a logical connective (or the
    # whole constraint), where a feature reference means "exists"
    if isinstance(expr, FeatureRef):
        return TypedExpr(expr, ExprType.BOOL if boolean else ExprType.INT)
    if isinstance(expr, AttributeRef):
        decl = attributes[(expr.feature, expr.attribute)]
        return TypedExpr(expr, _LITERAL_TYPES[decl.value.kind])
    if isinstance(expr, Literal):
        return TypedExpr(expr, _LITERAL_TYPES[expr.kind])

    if isinstance(expr, Not):
        inner = _check(expr.operand, attributes, True)
        _require(inner, inner.type is ExprType.BOOL, "bool")
        return TypedExpr(expr, ExprType.BOOL, (inner,))

    if isinstance(expr, (And, Or, Implies)):
        left = _check(expr.left, attributes, True)
        right = _check(expr.right, attributes, True)
        _require(left, left.type is ExprType.BOOL, "bool")
        _require(right, right.type is ExprType.BOOL, "bool")
        return TypedExpr(expr, ExprType.BOOL, (left, right))

    left = _check(expr.left, attributes, False)
    right = _check(expr.right, attributes, False)

    if isinstance(expr, Arith):
        _require(left, left.type.numeric, "number")
        _require(right, right.type.numeric, "number")
        if expr.op == "/" or ExprType.FLOAT in (left.type, right.type):
            result = ExprType.FLOAT
        else:
            result = ExprType.INT
        return TypedExpr(expr, result, (left, right))

    if isinstance(expr, Compare):
        if left.type.numeric:
            _require(right, right.type.numeric, "number")
        else:
            _require(right, right.type is left.type, left.type.value)
            if expr.op not in ("==", "!="):
                _require(left, left.type in _ORDERED, "number or string")
        return TypedExpr(expr, ExprType.BOOL, (left, right))

    raise TypeError(f"not an expression node: {expr!r}")
