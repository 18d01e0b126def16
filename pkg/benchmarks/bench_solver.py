"""Compare the native and pure-Python search kernels.

    python3 benchmarks/bench_solver.py [--repeat N] [--sizes 25,35,45]

Each workload counts every product of a generated feature model (balanced
``all`` tree, optional and mandatory children, random ``implies``
constraints). Counting drives the search through every solution, so it is
dominated by the kernel's inner loop.
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from fmlkit import load_model  # noqa: E402
from fmlkit.lowering import compile_model  # noqa: E402
from fmlkit.solver import SolverStats, available_backends, count_solutions  # noqa: E402
from generators import balanced_model  # noqa: E402


def measure(problem, backend, repeat):
    times = []
    for _ in range(repeat):
        stats = SolverStats()
        start = time.perf_counter()
        count = count_solutions(problem, backend=backend, stats=stats)
        times.append(time.perf_counter() - start)
    return count, stats, statistics.median(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--sizes", default="25,35,45", help="feature counts, comma-separated")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    backends = available_backends()
    if "native" not in backends:
        print("native kernel not built; only the python kernel is available")
    print(f"{'features':>8} {'products':>10} {'nodes':>10} " + " ".join(f"{b + ' s':>10}" for b in backends)
          + ("    speedup" if len(backends) == 2 else ""))
    for size in (int(s) for s in args.sizes.split(",")):
        text = balanced_model(features=size, requires=size // 4, branching=4, seed=args.seed)
        problem = compile_model(load_model(text))
        results = {b: measure(problem, b, args.repeat) for b in backends}
        counts = {r[0] for r in results.values()}
        assert len(counts) == 1, f"backends disagree: {results}"
        count, stats, _ = results[backends[0]]
        row = f"{size:>8} {count:>10} {stats.nodes:>10} " + " ".join(
            f"{results[b][2]:>10.4f}" for b in backends
        )
        if len(backends) == 2:
            row += f"  {results['python'][2] / results['native'][2]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
