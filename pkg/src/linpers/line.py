"""Persistence of a sampled function on a segment, in one linear pass."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _backend
from .core import Diagram, FunctionSample, InputError, Topology
from .stack import ReducerStack

__all__ = ["ReducerStack", "LineRun", "line_diagram", "run_line", "line_diagram_stream"]


@dataclass(frozen=True)
class LineRun:
    diagram: Diagram
    pushes: int
    pops: int


def diagram_from_kernel(result) -> Diagram:
    bv, dv, bi, di, ev, ei = result
    return Diagram(float(ev), int(ei), bv, dv, bi, di)


def run_line(values, backend: str | None = None) -> LineRun:
    """Reduce ``values`` and also report the stack traffic counters."""
    sample = FunctionSample.coerce(values, Topology.LINE)
    red = _backend.get(backend).LineReducer()
    red.feed(sample.values)
    diagram = diagram_from_kernel(red.finish_line())
    return LineRun(diagram, int(red.pushes), int(red.pops))


def line_diagram(values, backend: str | None = None) -> Diagram:
    """0-dimensional sublevel-set persistence diagram of a function on a segment.

    Parameters
    ----------
    values : array_like or FunctionSample
        Samples of the piecewise-linear function, in order along the segment.
    backend : {"cython", "python"}, optional
        Force a kernel implementation; defaults to the compiled one if built.

    Returns
    -------
    Diagram
        Finite pairs ``(birth, death)`` plus the essential pair of the global
        minimum.  Zero-persistence pairs are never produced.

    Examples
    --------
    >>> line_diagram([0, 2, 1, 3]).pairs()
    [PersistencePair(birth_value=1.0, death_value=2.0, birth_index=2, death_index=1), PersistencePair(birth_value=0.0, death_value=inf, birth_index=0, death_index=None)]
    """
    return run_line(values, backend).diagram


def line_diagram_stream(chunks: Iterable, backend: str | None = None) -> Diagram:
    """Same as :func:`line_diagram` but consumes the samples chunk by chunk."""
    red = _backend.get(backend).LineReducer()
    seen = 0
    for chunk in chunks:
        arr = np.ascontiguousarray(chunk, dtype=np.float64)
        if arr.size:
            red.feed(arr)
            seen += arr.size
    if not seen:
        raise InputError("empty sample")
    return diagram_from_kernel(red.finish_line())
