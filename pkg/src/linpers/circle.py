"""Persistence of a sampled function on a circle.

The cycle is cut at its global minimum, reduced to a narrowing shape in one
pass, then closed: the wrap-around neighbour of the top of the stack is the
global minimum itself.  The cut is virtual; the input is never rotated in
memory.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .core import Diagram, FunctionSample, Topology
from .line import diagram_from_kernel

__all__ = ["circle_diagram", "first_pass_stack"]


def circle_diagram(values, backend: str | None = None) -> Diagram:
    """0-dimensional sublevel-set persistence diagram of a function on a circle.

    The global maximum closes the loop and is left unpaired (it would only
    matter for 1-dimensional classes).

    >>> [tuple(p[:2]) for p in circle_diagram([0, 9, 2, 7, 4, 5]).pairs()]
    [(4.0, 5.0), (2.0, 7.0), (0.0, inf)]
    """
    sample = FunctionSample.coerce(values, Topology.CIRCLE)
    red = _backend.get(backend).LineReducer()
    red.feed_cyclic(sample.values)
    return diagram_from_kernel(red.finish_circle())


def first_pass_stack(values, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Stack contents after the single pass and before closing the cycle."""
    sample = FunctionSample.coerce(values, Topology.CIRCLE)
    red = _backend.get(backend).LineReducer()
    red.feed_cyclic(sample.values)
    return red.stack()
