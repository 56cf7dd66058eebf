"""Split-reduce-finish heuristic for the segment reducer.

Each slice is reduced on its own with the interior rules only (its
neighbours are unknown), which leaves a 2-phase remnant: expanding, then
narrowing.  Optionally the remnants are re-cut at their phase-change minima
and reduced once more.  The concatenated remnants are then finished by the
sequential reducer.  The answer never depends on the split; only the
amount of work left for the sequential finish does.  On an input that is
already narrowing, the slices find nothing and the finish does everything.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import Diagram, FunctionSample, Topology

__all__ = ["Segment", "ParallelRun", "reduce_segment", "parallel_line_diagram", "run_parallel"]


@dataclass(frozen=True)
class Segment:
    """Remnant of one slice plus the pairs found inside it."""

    values: np.ndarray
    indices: np.ndarray
    birth_values: np.ndarray
    death_values: np.ndarray
    birth_indices: np.ndarray
    death_indices: np.ndarray

    @property
    def n_pairs(self) -> int:
        return len(self.birth_values)


@dataclass(frozen=True)
class ParallelRun:
    diagram: Diagram
    pairs_per_phase: tuple[int, ...]
    remnant_length: int


def reduce_segment(values, indices=None, backend: str | None = None) -> Segment:
    """Reduce a slice to 2-phase shape; no boundary rule is applied.

    >>> seg = reduce_segment([0, 2, 1, 3])
    >>> seg.values.tolist(), seg.birth_values.tolist(), seg.death_values.tolist()
    ([0.0, 3.0], [1.0], [2.0])
    """
    vals = np.ascontiguousarray(values, dtype=np.float64)
    if indices is None:
        indices = np.arange(vals.size, dtype=np.int64)
    idx = np.ascontiguousarray(indices, dtype=np.int64)
    return Segment(*_backend.get(backend).reduce_segment(vals, idx))


def _cuts(n: int, segments: int) -> list[int]:
    cuts = np.linspace(0, n, segments + 1).round().astype(np.int64)
    return sorted(set(cuts.tolist()))


def _reduce_all(vals, idxs, cuts, pool, backend) -> list[Segment]:
    kern = _backend.get(backend)
    jobs = [(vals[a:b], idxs[a:b]) for a, b in zip(cuts, cuts[1:]) if b > a]
    return [Segment(*r) for r in pool.map(lambda job: kern.reduce_segment(*job), jobs)]


def _concat(segs: list[Segment]) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.concatenate([s.values for s in segs]),
        np.concatenate([s.indices for s in segs]),
    )


def run_parallel(
    values,
    segments: int,
    threads: int = 0,
    resplit: int = 1,
    backend: str | None = None,
) -> ParallelRun:
    """Parallel reduction with per-phase bookkeeping.

    ``threads=0`` uses one worker per CPU.  ``resplit`` is the number of
    extra passes cutting at the remnants' minima before the sequential finish.
    """
    if segments < 1:
        raise ValueError("segments must be >= 1")
    sample = FunctionSample.coerce(values, Topology.LINE)
    vals = sample.values
    idxs = np.arange(vals.size, dtype=np.int64)
    workers = threads if threads > 0 else (os.cpu_count() or 1)
    collected: list[list[Segment]] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        segs = _reduce_all(vals, idxs, _cuts(vals.size, segments), pool, backend)
        collected.append(segs)
        for _ in range(resplit):
            if len(segs) < 2:
                break
            offsets = np.cumsum([0] + [len(s.values) for s in segs])
            vals, idxs = _concat(segs)
            mins = [int(off + np.argmin(s.values)) for off, s in zip(offsets, segs)]
            cuts = sorted(set([0, *mins, len(vals)]))
            segs = _reduce_all(vals, idxs, cuts, pool, backend)
            collected.append(segs)
    vals, idxs = _concat(segs)
    red = _backend.get(backend).LineReducer()
    red.feed(vals, idxs)
    bv, dv, bi, di, ev, ei = red.finish_line()
    parts = [s for phase in collected for s in phase]
    diagram = Diagram(
        float(ev),
        int(ei),
        np.concatenate([s.birth_values for s in parts] + [bv]),
        np.concatenate([s.death_values for s in parts] + [dv]),
        np.concatenate([s.birth_indices for s in parts] + [bi]),
        np.concatenate([s.death_indices for s in parts] + [di]),
    )
    per_phase = tuple(sum(s.n_pairs for s in phase) for phase in collected) + (len(bv),)
    return ParallelRun(diagram, per_phase, len(vals))


def parallel_line_diagram(
    values, segments: int, threads: int = 0, resplit: int = 1, backend: str | None = None
) -> Diagram:
    """Same diagram as :func:`linpers.line.line_diagram`, computed slice-parallel."""
    return run_parallel(values, segments, threads, resplit, backend).diagram
