"""Timing harness: reducer against the sort + union-find baseline.

Every stage is timed on the same generated array; medians over the
repetitions are reported.  Only one large array is alive at a time, and
diagrams are dropped as soon as their size has been recorded.
"""

from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .line import line_diagram
from .oracle import oracle_line_fast

__all__ = ["GENERATORS", "DEFAULT_SEED", "generate", "BenchReport", "run_bench"]

DEFAULT_SEED = 20190417
GENERATORS = ("random", "monotonic", "constant", "narrowing")
STAGES = ("generation", "reducer", "oracle", "copy")


def _narrowing(n: int) -> np.ndarray:
    # minima climb from -n, maxima descend from n: every pair nests in the previous one
    out = np.empty(n, dtype=np.float64)
    k = np.arange((n + 1) // 2, dtype=np.float64)
    out[0::2] = k - n
    out[1::2] = n - k[: n // 2]
    return out


def generate(kind: str, n: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Array of ``n`` doubles of the given family."""
    if n < 1:
        raise ValueError("n must be >= 1")
    kind = kind.lower()
    if kind == "random":
        return np.random.default_rng(seed).random(n)
    if kind == "monotonic":
        return np.arange(n, dtype=np.float64)
    if kind == "constant":
        return np.zeros(n, dtype=np.float64)
    if kind == "narrowing":
        return _narrowing(n)
    raise ValueError(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")


@dataclass
class BenchReport:
    n: int
    generator: str
    repetitions: int
    seed: int
    runs: dict[str, list[float]] = field(default_factory=dict)
    n_pairs: int = 0
    backend: str = ""

    def median(self, stage: str) -> float:
        return statistics.median(self.runs[stage])

    @property
    def medians(self) -> dict[str, float]:
        return {k: self.median(k) for k in self.runs if self.runs[k]}

    def format(self) -> str:
        lines = [
            f"n={self.n} generator={self.generator} repetitions={self.repetitions} "
            f"seed={self.seed} backend={self.backend}",
            f"pairs={self.n_pairs}",
            f"{'stage':<12}{'median_s':>12}{'min_s':>12}{'max_s':>12}",
        ]
        for stage in STAGES:
            ts = self.runs.get(stage)
            if ts:
                lines.append(f"{stage:<12}{statistics.median(ts):>12.4f}{min(ts):>12.4f}{max(ts):>12.4f}")
        return "\n".join(lines) + "\n"


def run_bench(
    n: int,
    generator: str = "random",
    repetitions: int = 5,
    seed: int = DEFAULT_SEED,
    stages=STAGES,
    backend: str | None = None,
) -> BenchReport:
    """Time the requested stages ``repetitions`` times each.

    >>> r = run_bench(1, "constant", 1)
    >>> r.n_pairs
    1
    """
    from . import _backend

    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages {sorted(unknown)}")
    report = BenchReport(n, generator.lower(), repetitions, seed, {s: [] for s in stages})
    report.backend = backend or _backend.BACKEND
    clock = time.perf_counter
    for _ in range(repetitions):
        gc.collect()
        t0 = clock()
        arr = generate(generator, n, seed)
        t1 = clock()
        if "generation" in stages:
            report.runs["generation"].append(t1 - t0)
        if "copy" in stages:
            t0 = clock()
            dup = arr.copy()
            report.runs["copy"].append(clock() - t0)
            del dup
        if "reducer" in stages:
            t0 = clock()
            dgm = line_diagram(arr, backend=backend)
            report.runs["reducer"].append(clock() - t0)
            report.n_pairs = len(dgm)
            del dgm
            gc.collect()
        if "oracle" in stages:
            t0 = clock()
            dgm = oracle_line_fast(arr, backend=backend)
            report.runs["oracle"].append(clock() - t0)
            report.n_pairs = report.n_pairs or len(dgm)
            del dgm
            gc.collect()
        del arr
    return report
