import io
import json
import subprocess
import sys

import pytest

from conftest import INTERNET, INTERNET_RELAXED, MOBILE
from fmlkit import format_model, parse_model
from fmlkit.cli import parse_selection, run


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name, text in {
        "mobile.fml": MOBILE,
        "internet.fml": INTERNET,
        "relaxed.fml": INTERNET_RELAXED,
        "broken.fml": "FM = ;",
        "unknown.fml": "FM = A;\nB implies A;",
        "symbols.fml": "FM = A : {mode = fast, note = \"hi\", w = 1.5} : all [B (0..2)];",
    }.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return tmp_path


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate_mobile(files):
    assert call("validate", "mobile.fml") == (0, "valid\n", "")


def test_validate_internet_void(files):
    assert call("validate", "internet.fml") == (1, "void\n", "")


def test_count(files):
    assert call("count", "internet.fml") == (0, "0\n", "")
    assert call("count", "relaxed.fml") == (0, "3\n", "")
    assert call("count", "mobile.fml") == (0, "6\n", "")


def test_syntax_error(files):
    code, out, err = call("validate", "broken.fml")
    assert (code, out) == (2, "")
    assert err == "broken.fml:1:6: expected identifier\n"


def test_semantic_error(files):
    code, out, err = call("count", "unknown.fml")
    assert code == 3 and out == ""
    assert err.startswith("unknown.fml:2:1: ")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate", "mobile.fml"],
        ["products", "mobile.fml", "--format", "xml"],
        ["products", "mobile.fml", "--limit", "0"],
        ["check", "mobile.fml"],
        ["check", "mobile.fml", "--select", "Keyboard"],
        ["check", "mobile.fml", "--select", "Calls=7"],
        ["check", "mobile.fml", "--select", "Calls=x"],
        ["validate", "missing.fml"],
    ],
)
def test_usage_errors(files, argv):
    code, out, err = call(*argv)
    assert code == 4 and out == "" and err


def test_products_json(files):
    code, out, _ = call("products", "relaxed.fml")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 3
    for record in records:
        assert list(record) == ["features", "attributes"]
        assert list(record["features"]) == ["InternerConnection", "PowerLine", "ADSL", "Wireless"]
        assert list(record["attributes"]) == [
            "InternerConnection.price", "PowerLine.price", "ADSL.price", "Wireless.price",
        ]


def test_products_symbol_values(files):
    _, out, _ = call("products", "symbols.fml", "--limit", "1")
    assert json.loads(out) == {
        "features": {"A": 1, "B": 0},
        "attributes": {"A.mode": "fast", "A.note": "hi", "A.w": 1.5},
    }


def test_products_limit(files):
    _, out, _ = call("products", "mobile.fml", "--limit", "2")
    _, full, _ = call("products", "mobile.fml")
    assert out.splitlines() == full.splitlines()[:2]


def test_products_table(files):
    code, out, _ = call("products", "mobile.fml", "--format", "table")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[0].split() == [
        "MobilePhone", "Calls", "GPS", "Screen", "Basic", "Color",
        "HighResolution", "Media", "Camera", "MP3",
    ]
    assert all(set(line.split()) <= {"0", "1"} for line in lines[1:])


@pytest.mark.parametrize("name", ["mobile.fml", "relaxed.fml", "internet.fml"])
def test_count_matches_products(files, name):
    _, count, _ = call("count", name)
    _, out, _ = call("products", name, "--format", "json")
    assert int(count) == len(out.splitlines())


@pytest.mark.parametrize("name", ["mobile.fml", "relaxed.fml", "symbols.fml"])
def test_deterministic_output(files, name):
    for argv in (["products", name], ["compile", name], ["fmt", name]):
        assert call(*argv) == call(*argv)


def test_check(files):
    assert call("check", "mobile.fml", "--select", "Calls") == (0, "valid\n", "")
    code, out, _ = call("check", "mobile.fml", "--select", "Camera,!HighResolution")
    assert code == 1
    assert out == "invalid\n  violated: mobile.fml:7:1: Camera implies HighResolution\n"


def test_compile(files):
    code, out, _ = call("compile", "internet.fml", "--emit", "csp")
    lines = out.splitlines()
    assert code == 0
    assert lines[:2] == ["var InternerConnection : {0, 1}", "var InternerConnection.price : {420}"]
    assert sum(line.startswith("var ") for line in lines) == 8
    assert lines[-1] == "constraint cross-tree [Wireless.price] (150 <= Wireless.price) and (Wireless.price <= 250)"


def test_fmt_round_trips(files):
    code, out, _ = call("fmt", "mobile.fml")
    assert code == 0
    assert parse_model(out) == parse_model(MOBILE)
    assert out == format_model(parse_model(MOBILE))


def test_parse_selection():
    assert parse_selection("A, !B,C=3") == {"A": 1, "B": 0, "C": 3}


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "fmlkit", "validate", "mobile.fml"],
        capture_output=True, text=True, cwd=files,
    )
    assert (proc.returncode, proc.stdout) == (0, "valid\n")
