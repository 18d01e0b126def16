"""Canonical text rendering of models and expressions.

Output always reparses to a structurally equal tree: parentheses are
inserted wherever the precedence ladder would otherwise regroup operands.
"""

from __future__ import annotations

from .syntax import (
    And,
    Arith,
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

# binding strength, loosest first
_COMPARE, _IMPLIES, _OR, _AND, _NOT, _ADD, _MUL, _ATOM = range(1, 9)

_INDENT = "    "


def format_value(value) -> str:
    """Render a literal value the way the parser reads it back."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace('"', '\\"') + '"'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_literal(lit: Literal) -> str:
    if lit.kind is LiteralKind.SYMBOL:
        return lit.value.name
    return format_value(lit.value)


def _level(e) -> int:
    if isinstance(e, Compare):
        return _COMPARE
    if isinstance(e, Implies):
        return _IMPLIES
    if isinstance(e, Or):
        return _OR
    if isinstance(e, And):
        return _AND
    if isinstance(e, Not):
        return _NOT
    if isinstance(e, Arith):
        return _ADD if e.op in "+-" else _MUL
    return _ATOM


def _fmt(e, need: int) -> str:
    text = _render(e)
    return f"({text})" if _level(e) < need else text


def _render(e) -> str:
    if isinstance(e, FeatureRef):
        return e.name
    if isinstance(e, AttributeRef):
        return e.dotted
    if isinstance(e, Literal):
        return format_literal(e)
    if isinstance(e, Not):
        return "not " + _fmt(e.operand, _NOT)
    if isinstance(e, Compare):
        return f"{_fmt(e.left, _IMPLIES)} {e.op} {_fmt(e.right, _IMPLIES)}"
    if isinstance(e, Implies):
        return f"{_fmt(e.left, _OR)} implies {_fmt(e.right, _IMPLIES)}"
    if isinstance(e, Or):
        return f"{_fmt(e.left, _OR)} or {_fmt(e.right, _AND)}"
    if isinstance(e, And):
        return f"{_fmt(e.left, _AND)} and {_fmt(e.right, _NOT)}"
    if isinstance(e, Arith):
        lvl = _level(e)
        return f"{_fmt(e.left, lvl)} {e.op} {_fmt(e.right, lvl + 1)}"
    raise TypeError(f"not an expression node: {e!r}")


def format_expr(expr) -> str:
    return _render(expr)


def _feature_head(node: FeatureNode) -> str:
    text = f"{node.name} {node.cardinality}"
    if node.attributes:
        attrs = ", ".join(f"{a.name} = {format_literal(a.value)}" for a in node.attributes)
        text += f" : {{{attrs}}}"
    return text


def _format_feature(node: FeatureNode, depth: int, out: list[str], suffix: str) -> None:
    pad = _INDENT * depth
    head = _feature_head(node)
    if node.group is None:
        out.append(pad + head + suffix)
        return
    out.append(f"{pad}{head} : {node.group.kind.value} [")
    children = node.group.children
    for i, child in enumerate(children):
        _format_feature(child, depth + 1, out, "," if i < len(children) - 1 else "")
    out.append(pad + "]" + suffix)


def format_model(ast: FeatureModelAst) -> str:
    lines: list[str] = []
    _format_feature(ast.root, 0, lines, ";")
    lines[0] = f"{ast.name} = {lines[0]}"
    if ast.constraints:
        lines.append("")
        lines.extend(format_expr(c) + ";" for c in ast.constraints)
    return "\n".join(lines) + "\n"
