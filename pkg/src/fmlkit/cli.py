"""Command-line front end.

Exit codes: 0 success, 1 negative analysis result (void model or invalid
configuration), 2 syntax error, 3 semantic error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import (
    AnalysisError,
    Product,
    check_configuration,
    count_products,
    iter_products,
    valid_model,
)
from .errors import FmlSyntaxError, SemanticError
from .lowering import compile_model, dump_csp, feature_domain
from .model import ResolvedModel, resolve
from .printer import format_model, format_value
from .syntax import Symbol, parse_model

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_SYNTAX = 2
EXIT_SEMANTIC = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="fmlkit", description="Feature-model analysis toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("validate", help="check that the model has at least one product")
    p.add_argument("file")

    p = sub.add_parser("products", help="list valid products, one per line")
    p.add_argument("file")
    p.add_argument("--limit", type=int)
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("count", help="print the number of valid products")
    p.add_argument("file")

    p = sub.add_parser("check", help="check a (partial) configuration")
    p.add_argument("file")
    p.add_argument("--select", required=True, metavar="SPEC",
                   help="comma-separated Name=Count, Name (=1) or !Name (=0)")

    p = sub.add_parser("compile", help="show the lowered constraint problem")
    p.add_argument("file")
    p.add_argument("--emit", choices=("csp",), default="csp")

    p = sub.add_parser("fmt", help="pretty-print the model")
    p.add_argument("file")
    return parser


def parse_selection(spec: str) -> dict[str, int]:
    query: dict[str, int] = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if item.startswith("!"):
            name, count = item[1:].strip(), 0
        elif "=" in item:
            name, _, raw = item.partition("=")
            name = name.strip()
            try:
                count = int(raw)
            except ValueError:
                raise UsageError(f"bad count in selection {item!r}") from None
        else:
            name, count = item, 1
        if not name:
            raise UsageError(f"empty feature name in selection {item!r}")
        query[name] = count
    if not query:
        raise UsageError("empty selection")
    return query


def _json_value(value):
    return value.name if isinstance(value, Symbol) else value


def product_record(product: Product) -> str:
    return json.dumps(
        {
            "features": dict(product.features),
            "attributes": {k: _json_value(v) for k, v in product.attributes.items()},
        }
    )


def _cell(value) -> str:
    return value.name if isinstance(value, Symbol) else format_value(value)


def _table_columns(model: ResolvedModel) -> list[tuple[str, int]]:
    columns = []
    for name in model.preorder:
        node = model.features[name]
        width = max(len(name), *(len(str(v)) for v in feature_domain(node.cardinality)))
        columns.append((name, width))
        for attr in node.attributes:
            key = f"{name}.{attr.name}"
            columns.append((key, max(len(key), len(_cell(attr.value.value)))))
    return columns


def _load(path: str) -> ResolvedModel:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    return resolve(parse_model(text))


def _run(args, out) -> int:
    model = _load(args.file)

    if args.command == "validate":
        ok = valid_model(model)
        print("valid" if ok else "void", file=out)
        return EXIT_OK if ok else EXIT_NEGATIVE

    if args.command == "count":
        print(count_products(model), file=out)
        return EXIT_OK

    if args.command == "products":
        if args.limit is not None and args.limit < 1:
            raise UsageError("--limit must be at least 1")
        products = iter_products(model)
        if args.format == "table":
            columns = _table_columns(model)
            print("  ".join(name.ljust(w) for name, w in columns).rstrip(), file=out)
        for n, product in enumerate(products):
            if args.limit is not None and n >= args.limit:
                break
            if args.format == "json":
                print(product_record(product), file=out)
            else:
                values = {**product.features, **product.attributes}
                row = "  ".join(_cell(values[name]).ljust(w) for name, w in columns)
                print(row.rstrip(), file=out)
        return EXIT_OK

    if args.command == "check":
        query = parse_selection(args.select)
        try:
            verdict = check_configuration(model, query)
        except AnalysisError as exc:
            raise UsageError(str(exc)) from None
        if verdict.valid:
            print("valid", file=out)
            return EXIT_OK
        print("invalid", file=out)
        for witness in verdict.witnesses:
            where = f"{args.file}:{witness.span}: " if witness.span is not None else ""
            print(f"  violated: {where}{witness.label}", file=out)
        return EXIT_NEGATIVE

    if args.command == "compile":
        out.write(dump_csp(compile_model(model)))
        return EXIT_OK

    if args.command == "fmt":
        out.write(format_model(model.ast))
        return EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = _build_parser().parse_args(list(argv))
        return _run(args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except FmlSyntaxError as exc:
        print(exc.located(args.file), file=err)
        return EXIT_SYNTAX
    except SemanticError as exc:
        print(exc.located(args.file), file=err)
        return EXIT_SEMANTIC


def main() -> None:
    try:
        code = run(sys.argv[1:])
    except BrokenPipeError:
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
