"""Diagnostics raised by the parser and the semantic checks."""

from __future__ import annotations


class FmlError(Exception):
    """Base class for every diagnostic tied to a source location."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def located(self, filename: str) -> str:
        if self.span is None:
            return f"{filename}: {self.message}"
        return f"{filename}:{self.span.line}:{self.span.column}: {self.message}"


class FmlSyntaxError(FmlError):
    def __init__(self, span, expected, found: str):
        self.expected = tuple(expected)
        self.found = found
        super().__init__("expected " + " or ".join(self.expected), span)


class SemanticError(FmlError):
    """Resolution or type error in a syntactically valid model."""


class DuplicateFeature(SemanticError):
    def __init__(self, name: str, first, second):
        self.name = name
        self.first = first
        super().__init__(f"duplicate feature {name!r} (first declared at {first})", second)


class DuplicateAttribute(SemanticError):
    def __init__(self, feature: str, name: str, span):
        self.feature = feature
        self.name = name
        super().__init__(f"duplicate attribute {name!r} on feature {feature!r}", span)


class UnknownReference(SemanticError):
    def __init__(self, name: str, span):
        self.name = name
        super().__init__(f"unknown reference {name!r}", span)


class BadCardinality(SemanticError):
    def __init__(self, cardinality, span):
        self.cardinality = cardinality
        super().__init__(
            f"invalid cardinality {cardinality}: need 0 <= min <= max and max >= 1", span
        )


class FmlTypeError(SemanticError):
    def __init__(self, span, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(f"type error: expected {expected}, found {found}", span)
