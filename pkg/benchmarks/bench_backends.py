#!/usr/bin/env python3
"""Compiled kernels against the pure-Python fallback on the same inputs.

    python3 benchmarks/bench_backends.py -n 1000000 -r 3
"""

import argparse
import statistics
import time

from linpers import _backend
from linpers.bench import DEFAULT_SEED, GENERATORS, generate
from linpers.circle import circle_diagram
from linpers.core import diagram_equal
from linpers.image import image_diagram
from linpers.line import line_diagram
from linpers.oracle import oracle_line_fast
from linpers.parallel import parallel_line_diagram

TASKS = {
    "line": lambda a, b: line_diagram(a, b),
    "circle": lambda a, b: circle_diagram(a, b),
    "image": lambda a, b: image_diagram(a - 0.25, a, b),
    "parallel8": lambda a, b: parallel_line_diagram(a, 8, backend=b),
    "baseline": lambda a, b: oracle_line_fast(a, b),
}


def median_time(fn, reps):
    times = []
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-n", type=int, default=10**6)
    parser.add_argument("-r", "--repetitions", type=int, default=3)
    parser.add_argument("--generator", choices=GENERATORS, default="random")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args()

    if not _backend.COMPILED:
        raise SystemExit("extension not built; run `pip install -e . --no-build-isolation` first")
    a = generate(args.generator, args.n, args.seed)
    print(f"n={args.n} generator={args.generator} repetitions={args.repetitions}")
    print(f"{'task':<12}{'cython_s':>12}{'python_s':>12}{'speedup':>10}")
    for name, task in TASKS.items():
        tc, dc = median_time(lambda: task(a, "cython"), args.repetitions)
        tp, dp = median_time(lambda: task(a, "python"), args.repetitions)
        assert diagram_equal(dc, dp, "indices"), name
        print(f"{name:<12}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
