"""Textual feature-model language: parser, semantic checks, CSP lowering and
product-line analyses."""

from importlib import resources

from .analysis import (
    Product,
    Verdict,
    check_configuration,
    core_features,
    count_products,
    dead_features,
    enumerate_products,
    iter_products,
    valid_model,
)
from .errors import FmlError, FmlSyntaxError, FmlTypeError, SemanticError
from .lowering import compile_model, dump_csp, exists, feature_domain
from .model import ResolvedModel, resolve, typecheck
from .printer import format_expr, format_model
from .syntax import parse_expression, parse_model

__version__ = "0.1.0"


def load_model(source: str) -> ResolvedModel:
    """Parse and resolve model source text."""
    return resolve(parse_model(source))


def fixture_text(name: str) -> str:
    """Source of a bundled example model, e.g. ``"mobile_phone"``."""
    return resources.files(__package__).joinpath("fixtures", f"{name}.fml").read_text("utf-8")


__all__ = [
    "FmlError",
    "FmlSyntaxError",
    "FmlTypeError",
    "Product",
    "ResolvedModel",
    "SemanticError",
    "Verdict",
    "check_configuration",
    "compile_model",
    "core_features",
    "count_products",
    "dead_features",
    "dump_csp",
    "enumerate_products",
    "exists",
    "feature_domain",
    "fixture_text",
    "format_expr",
    "format_model",
    "iter_products",
    "load_model",
    "parse_expression",
    "parse_model",
    "resolve",
    "typecheck",
    "valid_model",
]
