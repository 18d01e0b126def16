"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary. Run ``pytest tests/test_acceptance.py -v`` to see
them, or execute this file directly.
"""

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fmlkit import fixture_text, load_model, parse_model  # noqa: E402
from fmlkit.analysis import (  # noqa: E402
    core_features,
    count_products,
    dead_features,
    enumerate_products,
    valid_model,
)
from fmlkit.lowering import compile_model  # noqa: E402
from fmlkit.solver import CspProblem, solve_all  # noqa: E402
from fragments import ROWS, compiled_set, expected_set  # noqa: E402
from generators import balanced_model, random_problem  # noqa: E402
from oracles import brute_force_csp  # noqa: E402

# tolerances
SOLVER_EXAMPLE_SECONDS = 0.001
FIXTURE_ANALYSIS_SECONDS = 0.010
RANDOM_CSP_SECONDS = 5.0
SCALE_SECONDS = 10.0
RANDOM_CSP_COUNT = 200

RESULTS: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def best_time(fn, repeat=20):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return result, best


def fmlkit_cli(*argv, cwd=None):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "fmlkit", *argv], capture_output=True, cwd=cwd
    )
    return proc, time.perf_counter() - start


def mandatory_pair():
    problem = CspProblem().add_variable("A", [0, 1]).add_variable("B", [0, 1])
    problem.add_constraint(("A", "B"), lambda a, b: a > 0 and b > 0)
    return problem


def attribute_pair():
    problem = CspProblem().add_variable("A.p", range(10)).add_variable("B.m", ["ok"])
    problem.add_constraint(("A.p", "B.m"), lambda p, m: p > 5 and m == "ok")
    return problem


def test_criterion_1_solver_examples():
    first, t1 = best_time(lambda: solve_all(mandatory_pair()))
    second, t2 = best_time(lambda: solve_all(attribute_pair()))
    exact = first == [{"A": 1, "B": 1}] and second == [
        {"A.p": p, "B.m": "ok"} for p in (6, 7, 8, 9)
    ]
    fast = t1 < SOLVER_EXAMPLE_SECONDS and t2 < SOLVER_EXAMPLE_SECONDS
    report(1, exact and fast,
           f"mandatory pair {first}, attribute pair {len(second)} solutions; "
           f"{t1 * 1e3:.3f} ms / {t2 * 1e3:.3f} ms (limit 1 ms each)")


def test_criterion_2_fixtures_parse_resolve_compile():
    notes = []
    for name in ("mobile_phone", "internet_connection"):
        text = fixture_text(name)
        try:
            problem = compile_model(load_model(text))
            notes.append(f"{name}: {len(problem.variables)} vars, {len(problem.constraints)} constraints")
        except Exception as exc:  # any diagnostic fails the criterion
            notes.append(f"{name}: {type(exc).__name__}: {exc}")
            report(2, False, "; ".join(notes))
    spelled = "InternerConnection" in fixture_text("internet_connection")
    report(2, spelled, "; ".join(notes) + "; zero diagnostics")


def test_criterion_3_internet_connection_consistency():
    text = fixture_text("internet_connection")

    def run():
        model = load_model(text)
        return model, valid_model(model), count_products(model)

    (model, sat, count), elapsed = best_time(run, repeat=5)
    products = enumerate_products(model)
    identity = all(
        p.attributes["InternerConnection.price"]
        == 20 + p.attributes["ADSL.price"] + p.attributes["PowerLine.price"] + p.attributes["Wireless.price"]
        for p in products
    )
    ok = sat and identity and count == 3 and elapsed < FIXTURE_ANALYSIS_SECONDS
    detail = f"satisfiable={sat}, price identity in every product={identity} (over {len(products)}), count={count} (expected 3), {elapsed * 1e3:.2f} ms"
    if not sat:
        detail += "; Wireless.price=100 contradicts 150<=Wireless.price, so no product exists"
    report(3, ok, detail)


def test_criterion_4_mobile_phone_product_space():
    text = fixture_text("mobile_phone")

    def run():
        model = load_model(text)
        return count_products(model), dead_features(model), core_features(model)

    (count, dead, core), elapsed = best_time(run, repeat=5)
    ok = (
        count == 6
        and dead == set()
        and core == {"MobilePhone", "Calls", "Media"}
        and elapsed < FIXTURE_ANALYSIS_SECONDS
    )
    report(4, ok, f"count={count}, dead={sorted(dead)}, core={sorted(core)}, {elapsed * 1e3:.2f} ms (limit 10 ms)")


def test_criterion_5_relation_rows():
    bad = [row for row in ROWS if compiled_set(row) != expected_set(row)]
    report(5, not bad and len(ROWS) == 7,
           f"{len(ROWS) - len(bad)}/7 relation rows match their brute-force sets" + (f"; mismatched {bad}" if bad else ""))


def test_criterion_6_random_csp_oracle():
    rng = random.Random(20240601)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(RANDOM_CSP_COUNT):
        problem, names, domains, oracle = random_problem(rng)
        got = solve_all(problem)
        want = brute_force_csp(names, domains, oracle)
        key = lambda s: tuple(s.items())  # noqa: E731
        if {key(s) for s in got} != {key(s) for s in want} or len(got) != len(want):
            mismatches += 1
    elapsed = time.perf_counter() - start
    report(6, mismatches == 0 and elapsed < RANDOM_CSP_SECONDS,
           f"{RANDOM_CSP_COUNT - mismatches}/{RANDOM_CSP_COUNT} random problems match brute force, {elapsed:.2f} s (limit 5 s)")


def test_criterion_7_products_deterministic(tmp_path):
    same = []
    for name in ("mobile_phone", "internet_connection"):
        path = tmp_path / f"{name}.fml"
        path.write_text(fixture_text(name), encoding="utf-8")
        a, _ = fmlkit_cli("products", str(path))
        b, _ = fmlkit_cli("products", str(path))
        same.append(a.returncode == 0 and a.stdout == b.stdout and a.stderr == b.stderr == b"")
    report(7, all(same), f"byte-identical products output on {sum(same)}/{len(same)} fixtures")


def test_criterion_8_scale_smoke(tmp_path):
    text = balanced_model(features=1000, requires=50, seed=8)
    ast = parse_model(text)
    assert sum(1 for _ in ast.root.walk()) == 1000 and len(ast.constraints) == 50
    path = tmp_path / "generated.fml"
    path.write_text(text, encoding="utf-8")
    validate, t_validate = fmlkit_cli("validate", str(path))
    first, t_first = fmlkit_cli("products", str(path), "--limit", "1")
    ok = (
        validate.returncode in (0, 1)
        and first.returncode == 0
        and t_validate < SCALE_SECONDS
        and t_first < SCALE_SECONDS
    )
    report(8, ok,
           f"1000 features / 50 requires: validate -> {validate.stdout.decode().strip()} in {t_validate:.2f} s, "
           f"products --limit 1 -> {len(first.stdout.splitlines())} record in {t_first:.2f} s (limit 10 s each)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
