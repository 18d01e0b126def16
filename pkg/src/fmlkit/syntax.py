"""Abstract syntax and a scannerless recursive-descent (PEG) parser for
feature-model source text.

Grammar (whitespace and ``//`` comments are skipped between tokens)::

    Model       <- ID '=' Compound ';' Constraint* EOF
    Compound    <- Basic (':' Group '[' Compound (',' Compound)* ']')?
    Basic       <- ID Cardinality? (':' '{' Attribute (',' Attribute)* '}')?
    Cardinality <- '(' INT '..' INT ')'
    Attribute   <- ID '=' Value
    Value       <- FLOAT / INT / STRING / BOOL / ID
    Group       <- 'all' / 'oneof' / 'moreof'
    Constraint  <- Compare ';'

    Compare     <- Implies (CmpOp Implies)*      # chains desugar to 'and'
    Implies     <- Or ('implies' Implies)?       # right associative
    Or          <- And ('or' And)*
    And         <- Not ('and' Not)*
    Not         <- 'not' Not / Additive
    Additive    <- Mult (('+' / '-') Mult)*
    Mult        <- Primary (('*' / '/') Primary)*
    Primary     <- '(' Compare ')' / FLOAT / INT / STRING / BOOL / ID ('.' ID)?

``=`` is accepted as a synonym for ``==`` in constraints.
"""

from __future__ import annotations

import bisect
import enum
import re
from dataclasses import dataclass, field
from typing import Union

from .errors import FmlSyntaxError

__all__ = [
    "SourceSpan",
    "Symbol",
    "LiteralKind",
    "GroupKind",
    "Cardinality",
    "AttributeDecl",
    "Group",
    "FeatureNode",
    "FeatureModelAst",
    "FeatureRef",
    "AttributeRef",
    "Literal",
    "Not",
    "And",
    "Or",
    "Implies",
    "Compare",
    "Arith",
    "ConstraintExpr",
    "KEYWORDS",
    "COMPARE_OPS",
    "ARITH_OPS",
    "parse_model",
    "parse_expression",
]


@dataclass(frozen=True)
class SourceSpan:
    """Location of a syntax node. ``offset`` and ``length`` count UTF-8 bytes."""

    line: int
    column: int
    offset: int
    length: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Symbol:
    """A bare identifier used as an attribute value."""

    name: str

    def __str__(self) -> str:
        return self.name


class LiteralKind(enum.Enum):
    INT = "int"
    FLOAT = "float"
    STRING = "string"
    BOOL = "bool"
    SYMBOL = "symbol"


class GroupKind(enum.Enum):
    ALL = "all"
    ONEOF = "oneof"
    MOREOF = "moreof"


def _span_field():
    return field(default=None, compare=False, repr=False)


# -- feature tree -----------------------------------------------------------


@dataclass(frozen=True)
class Cardinality:
    min: int = 1
    max: int = 1
    span: SourceSpan | None = _span_field()

    def __str__(self) -> str:
        return f"({self.min}..{self.max})"


@dataclass(frozen=True)
class Literal:
    value: object
    kind: LiteralKind
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    value: Literal
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Group:
    kind: GroupKind
    children: tuple[FeatureNode, ...]


@dataclass(frozen=True)
class FeatureNode:
    name: str
    cardinality: Cardinality = Cardinality()
    attributes: tuple[AttributeDecl, ...] = ()
    group: Group | None = None
    span: SourceSpan | None = _span_field()

    def walk(self):
        """Yield this feature and its descendants in pre-order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if node.group is not None:
                stack.extend(reversed(node.group.children))


@dataclass(frozen=True)
class FeatureModelAst:
    name: str
    root: FeatureNode
    constraints: tuple[ConstraintExpr, ...] = ()
    span: SourceSpan | None = _span_field()


# -- constraint expressions -------------------------------------------------


@dataclass(frozen=True)
class FeatureRef:
    name: str
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class AttributeRef:
    feature: str
    attribute: str
    span: SourceSpan | None = _span_field()

    @property
    def dotted(self) -> str:
        return f"{self.feature}.{self.attribute}"


@dataclass(frozen=True)
class Not:
    operand: ConstraintExpr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class And:
    left: ConstraintExpr
    right: ConstraintExpr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Or:
    left: ConstraintExpr
    right: ConstraintExpr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Implies:
    left: ConstraintExpr
    right: ConstraintExpr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Compare:
    op: str
    left: ConstraintExpr
    right: ConstraintExpr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Arith:
    op: str
    left: ConstraintExpr
    right: ConstraintExpr
    span: SourceSpan | None = _span_field()


ConstraintExpr = Union[FeatureRef, AttributeRef, Literal, Not, And, Or, Implies, Compare, Arith]

KEYWORDS = frozenset(
    {"all", "oneof", "moreof", "and", "or", "not", "implies", "true", "false"}
)
COMPARE_OPS = ("==", "!=", "<=", ">=", "<", ">")
ARITH_OPS = ("+", "-", "*", "/")

# longest first so '<=' wins over '<' and '==' over '='
_CMP_TOKENS = ("==", "!=", "<=", ">=", "<", ">", "=")

_SKIP = re.compile(r"(?:\s+|//[^\n]*)*")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_WORD_CONT = re.compile(r"[A-Za-z0-9_]")
_UINT = re.compile(r"[0-9]+")
_INT = re.compile(r"-?[0-9]+")
_FLOAT = re.compile(r"-?[0-9]+\.[0-9]+(?:[eE][-+]?[0-9]+)?|-?[0-9]+[eE][-+]?[0-9]+")
_STRING = re.compile(r'"((?:\\"|[^"])*)"')


class _Fail(Exception):
    """Internal backtracking signal; carries no data (see farthest-failure)."""


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.far = -1
        self.expected: set[str] = set()
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", text)]
        self._ascii = text.isascii()

    # -- positions and diagnostics --

    def span(self, start: int, end: int) -> SourceSpan:
        line = bisect.bisect_right(self._line_starts, start)
        column = start - self._line_starts[line - 1] + 1
        if self._ascii:
            offset, length = start, end - start
        else:
            offset = len(self.text[:start].encode("utf-8"))
            length = len(self.text[start:end].encode("utf-8"))
        return SourceSpan(line, column, offset, length)

    def note(self, label: str) -> None:
        if self.pos > self.far:
            self.far = self.pos
            self.expected = {label}
        elif self.pos == self.far:
            self.expected.add(label)

    def fail(self, label: str):
        self.note(label)
        raise _Fail

    def error(self) -> FmlSyntaxError:
        at = max(self.far, 0)
        if at >= len(self.text):
            found = "end of input"
        else:
            m = _IDENT.match(self.text, at)
            found = repr(m.group()) if m else repr(self.text[at])
        return FmlSyntaxError(self.span(at, min(at + 1, len(self.text))), sorted(self.expected), found)

    # -- lexical helpers --

    def skip(self) -> None:
        self.pos = _SKIP.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def accept(self, token: str) -> bool:
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        self.note(repr(token))
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            raise _Fail

    def accept_keyword(self, word: str) -> bool:
        self.skip()
        end = self.pos + len(word)
        if self.text.startswith(word, self.pos) and not _WORD_CONT.match(self.text, end):
            self.pos = end
            return True
        self.note(repr(word))
        return False

    def match(self, pattern: re.Pattern, label: str):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if m is None:
            self.fail(label)
        self.pos = m.end()
        return m

    def ident(self) -> tuple[str, int]:
        self.skip()
        start = self.pos
        m = _IDENT.match(self.text, start)
        if m is None or m.group() in KEYWORDS:
            self.fail("identifier")
        self.pos = m.end()
        return m.group(), start

    def attempt(self, rule):
        """Run ``rule``; on failure restore the position and return None."""
        saved = self.pos
        try:
            return rule()
        except _Fail:
            self.pos = saved
            return None

    # -- feature tree --

    def model(self) -> FeatureModelAst:
        self.skip()
        start = self.pos
        name, _ = self.ident()
        self.expect("=")
        root = self.compound()
        self.expect(";")
        constraints = []
        while not self.at_end():
            self.note("end of input")
            constraints.append(self.constraint())
        return FeatureModelAst(name, root, tuple(constraints), self.span(start, self.pos))

    def compound(self) -> FeatureNode:
        node = self.basic()
        group = self.attempt(self.group_part)
        if group is None:
            return node
        return FeatureNode(node.name, node.cardinality, node.attributes, group, node.span)

    def group_part(self) -> Group:
        self.expect(":")
        self.skip()
        kind = None
        for k in GroupKind:
            if self.accept_keyword(k.value):
                kind = k
                break
        if kind is None:
            raise _Fail
        self.expect("[")
        children = [self.compound()]
        while self.accept(","):
            children.append(self.compound())
        self.expect("]")
        return Group(kind, tuple(children))

    def basic(self) -> FeatureNode:
        name, start = self.ident()
        card = self.attempt(self.cardinality)
        attrs = self.attempt(self.attribute_list) or ()
        return FeatureNode(name, card or Cardinality(), attrs, None, self.span(start, start + len(name)))

    def cardinality(self) -> Cardinality:
        self.expect("(")
        start = self.pos - 1
        lo = int(self.match(_UINT, "integer").group())
        self.expect("..")
        hi = int(self.match(_UINT, "integer").group())
        self.expect(")")
        return Cardinality(lo, hi, self.span(start, self.pos))

    def attribute_list(self) -> tuple[AttributeDecl, ...]:
        self.expect(":")
        self.expect("{")
        attrs = [self.attribute()]
        while self.accept(","):
            attrs.append(self.attribute())
        self.expect("}")
        return tuple(attrs)

    def attribute(self) -> AttributeDecl:
        name, start = self.ident()
        self.expect("=")
        value = self.literal(allow_symbol=True)
        if value is None:
            self.fail("value")
        return AttributeDecl(name, value, self.span(start, self.pos))

    def literal(self, allow_symbol: bool) -> Literal | None:
        self.skip()
        start = self.pos
        text = self.text
        m = _FLOAT.match(text, start)
        if m:
            self.pos = m.end()
            return Literal(float(m.group()), LiteralKind.FLOAT, self.span(start, self.pos))
        m = _INT.match(text, start)
        if m:
            self.pos = m.end()
            return Literal(int(m.group()), LiteralKind.INT, self.span(start, self.pos))
        m = _STRING.match(text, start)
        if m:
            self.pos = m.end()
            value = m.group(1).replace('\\"', '"')
            return Literal(value, LiteralKind.STRING, self.span(start, self.pos))
        for word, value in (("true", True), ("false", False)):
            if self.accept_keyword(word):
                return Literal(value, LiteralKind.BOOL, self.span(start, self.pos))
        if allow_symbol:
            m = _IDENT.match(text, start)
            if m and m.group() not in KEYWORDS:
                self.pos = m.end()
                return Literal(Symbol(m.group()), LiteralKind.SYMBOL, self.span(start, self.pos))
        return None

    # -- expressions --

    def constraint(self) -> ConstraintExpr:
        expr = self.compare()
        self.expect(";")
        return expr

    def compare(self) -> ConstraintExpr:
        self.skip()
        start = self.pos
        operands = [self.implies()]
        ops = []
        while True:
            op = self.compare_op()
            if op is None:
                break
            ops.append(op)
            operands.append(self.implies())
        if not ops:
            return operands[0]
        links = [
            Compare(op, left, right, self._join(left, right))
            for op, left, right in zip(ops, operands, operands[1:])
        ]
        expr = links[0]
        for link in links[1:]:
            expr = And(expr, link, self.span(start, self.pos))
        return expr

    def compare_op(self) -> str | None:
        self.skip()
        for token in _CMP_TOKENS:
            if self.text.startswith(token, self.pos):
                self.pos += len(token)
                return "==" if token == "=" else token
        self.note("comparison operator")
        return None

    def implies(self) -> ConstraintExpr:
        left = self.disjunction()
        if self.accept_keyword("implies"):
            right = self.implies()
            return Implies(left, right, self._join(left, right))
        return left

    def disjunction(self) -> ConstraintExpr:
        left = self.conjunction()
        while self.accept_keyword("or"):
            right = self.conjunction()
            left = Or(left, right, self._join(left, right))
        return left

    def conjunction(self) -> ConstraintExpr:
        left = self.negation()
        while self.accept_keyword("and"):
            right = self.negation()
            left = And(left, right, self._join(left, right))
        return left

    def negation(self) -> ConstraintExpr:
        self.skip()
        start = self.pos
        if self.accept_keyword("not"):
            operand = self.negation()
            return Not(operand, self.span(start, self.pos))
        return self.additive()

    def additive(self) -> ConstraintExpr:
        left = self.multiplicative()
        while True:
            op = self._arith_op("+-")
            if op is None:
                return left
            right = self.multiplicative()
            left = Arith(op, left, right, self._join(left, right))

    def multiplicative(self) -> ConstraintExpr:
        left = self.primary()
        while True:
            op = self._arith_op("*/")
            if op is None:
                return left
            right = self.primary()
            left = Arith(op, left, right, self._join(left, right))

    def _arith_op(self, chars: str) -> str | None:
        self.skip()
        if self.pos < len(self.text) and self.text[self.pos] in chars:
            # '//' is a comment, consumed by skip(); a lone '/' is division
            op = self.text[self.pos]
            self.pos += 1
            return op
        for c in chars:
            self.note(repr(c))
        return None

    def primary(self) -> ConstraintExpr:
        self.skip()
        start = self.pos
        if self.accept("("):
            inner = self.compare()
            self.expect(")")
            return _respan(inner, self.span(start, self.pos))
        lit = self.literal(allow_symbol=False)
        if lit is not None:
            return lit
        m = _IDENT.match(self.text, start)
        if m is None or m.group() in KEYWORDS:
            self.fail("expression")
        self.pos = m.end()
        name = m.group()
        saved = self.pos
        if self.accept("."):
            attr, _ = self.ident()
            return AttributeRef(name, attr, self.span(start, self.pos))
        self.pos = saved
        return FeatureRef(name, self.span(start, self.pos))

    def _join(self, left, right) -> SourceSpan:
        a, b = left.span, right.span
        end = b.offset + b.length
        if self._ascii:
            return self.span(a.offset, end)
        return SourceSpan(a.line, a.column, a.offset, end - a.offset)


def _respan(expr, span: SourceSpan):
    """Widen a parenthesised expression's span to include the parentheses."""
    return type(expr)(**{**expr.__dict__, "span": span})


def parse_model(source: str) -> FeatureModelAst:
    """Parse a complete feature-model file.

    Raises :class:`FmlSyntaxError` at the farthest position any alternative
    reached, listing every token that would have been accepted there.
    """
    p = _Parser(source)
    try:
        return p.model()
    except _Fail:
        raise p.error() from None


def parse_expression(source: str) -> ConstraintExpr:
    """Parse a single constraint expression (no trailing ``;``)."""
    p = _Parser(source)
    try:
        expr = p.compare()
        if not p.at_end():
            p.fail("end of input")
        return expr
    except _Fail:
        raise p.error() from None
