"""Image persistence for a pair of functions ``f <= g`` on a segment.

Components of the image are born at local minima of ``g`` and merged at
local maxima of ``f``.  Two rewrites shrink the list of those critical
points without changing the image diagram:

* between two consecutive minima of ``g``, if no maximum of ``f`` rises
  above the higher minimum, that minimum is never born in the image and is
  dropped;
* between two consecutive maxima of ``f``, if ``g`` never dips below the
  lower maximum, that maximum only swallows cokernel components and is
  dropped.

A maximum of ``f`` with no minimum of ``g`` on one side merges nothing
visible and is dropped too.  What remains alternates minimum, maximum,
minimum, ... with every maximum above its neighbours, i.e. it is a single
function, and the segment reducer finishes the job.  Both rewrites are
applied as event-list deletions; neither function is ever modified.

Ties between an ``f`` value and a ``g`` value are broken by sample index,
and at the same sample the ``f`` value counts as smaller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .core import Diagram, FunctionPair, InvariantError

__all__ = [
    "FMAX",
    "GMIN",
    "CriticalList",
    "critical_events",
    "reduce_critical",
    "reduce_between_minima",
    "reduce_between_maxima",
    "image_diagram",
]

FMAX = 0
GMIN = 1


@dataclass(frozen=True)
class CriticalList:
    """Critical points of the pair, in position order."""

    kinds: np.ndarray
    values: np.ndarray
    positions: np.ndarray

    def __len__(self) -> int:
        return len(self.kinds)

    def keys(self) -> list[tuple[float, int, int]]:
        return list(zip(self.values.tolist(), self.positions.tolist(), self.kinds.tolist()))

    def check_reduced(self) -> None:
        """Alternating, starting and ending with a minimum, maxima above both neighbours."""
        kinds = self.kinds.tolist()
        keys = self.keys()
        if not kinds or kinds[0] != GMIN or kinds[-1] != GMIN:
            raise InvariantError("reduced list must start and end with a minimum of g")
        for a, b in zip(kinds, kinds[1:]):
            if a == b:
                raise InvariantError("reduced list does not alternate")
        for k in range(1, len(kinds), 2):
            if not (keys[k - 1] < keys[k] > keys[k + 1]):
                raise InvariantError(f"maximum at position {keys[k][1]} is not above its neighbours")


def _g_minima(g: np.ndarray) -> np.ndarray:
    n = g.size
    mask = np.ones(n, dtype=bool)
    mask[1:] &= g[1:] < g[:-1]
    mask[:-1] &= g[:-1] <= g[1:]
    return np.flatnonzero(mask)


def _f_maxima(f: np.ndarray) -> np.ndarray:
    n = f.size
    mask = np.ones(n, dtype=bool)
    mask[1:] &= f[1:] >= f[:-1]
    mask[:-1] &= f[:-1] > f[1:]
    return np.flatnonzero(mask)


def critical_events(f, g=None) -> CriticalList:
    """Strict local maxima of ``f`` and minima of ``g``, merged by position."""
    pair = FunctionPair.coerce(f, g)
    fmax = _f_maxima(pair.f)
    gmin = _g_minima(pair.g)
    positions = np.concatenate((fmax, gmin))
    kinds = np.concatenate((np.full(fmax.size, FMAX, np.uint8), np.full(gmin.size, GMIN, np.uint8)))
    order = np.lexsort((kinds, positions))
    positions = positions[order]
    kinds = kinds[order]
    values = np.where(kinds == FMAX, pair.f[positions], pair.g[positions])
    return CriticalList(kinds, values, positions.astype(np.int64))


def reduce_critical(f, g=None, backend: Optional[str] = None) -> CriticalList:
    """Apply both rewrites and the boundary rule until nothing changes (one pass)."""
    events = critical_events(f, g)
    keep = _backend.get(backend).reduce_events(events.kinds, events.values, events.positions)
    return CriticalList(events.kinds[keep], events.values[keep], events.positions[keep])


def _check_interval(t1: int, t2: int, n: int) -> None:
    if not 0 <= t1 < t2 < n:
        raise ValueError(f"need 0 <= t1 < t2 < {n}, got {t1}, {t2}")


def reduce_between_minima(f, g, t1: int, t2: int) -> Optional[int]:
    """Decide whether one of two consecutive minima of ``g`` can be dropped.

    Lowering ``g`` on ``[t1, t2]`` to ``max(higher minimum, max of f there)``
    leaves the image unchanged, since the two ends are already joined in the
    ``f``-sublevel set at that level.  If ``f`` stays at or below the higher
    minimum, that minimum disappears; its index is returned.  Otherwise the
    maximum of ``f`` separates them and ``None`` is returned.
    """
    pair = FunctionPair.coerce(f, g)
    _check_interval(t1, t2, len(pair))
    gmin = set(_g_minima(pair.g).tolist())
    if t1 not in gmin or t2 not in gmin:
        raise ValueError("t1 and t2 must be strict local minima of g")
    if any(t1 < t < t2 for t in gmin):
        raise ValueError("t1 and t2 are not consecutive minima of g")
    higher = max((float(pair.g[t1]), t1, GMIN), (float(pair.g[t2]), t2, GMIN))
    top_f = max((float(pair.f[i]), i, FMAX) for i in range(t1, t2 + 1))
    return higher[1] if top_f < higher else None


def reduce_between_maxima(f, g, t1: int, t2: int) -> Optional[int]:
    """Decide whether one of two consecutive maxima of ``f`` can be dropped.

    Raising ``f`` on ``[t1, t2]`` to ``min(lower maximum, min of g there)``
    only removes components that hold no ``g``-sublevel point.  If ``g``
    stays at or above the lower maximum, that maximum disappears and its
    index is returned.
    """
    pair = FunctionPair.coerce(f, g)
    _check_interval(t1, t2, len(pair))
    fmax = set(_f_maxima(pair.f).tolist())
    if t1 not in fmax or t2 not in fmax:
        raise ValueError("t1 and t2 must be strict local maxima of f")
    if any(t1 < t < t2 for t in fmax):
        raise ValueError("t1 and t2 are not consecutive maxima of f")
    lower = min((float(pair.f[t1]), t1, FMAX), (float(pair.f[t2]), t2, FMAX))
    bottom_g = min((float(pair.g[i]), i, GMIN) for i in range(t1, t2 + 1))
    return lower[1] if bottom_g > lower else None


def image_diagram(f, g=None, backend: Optional[str] = None) -> Diagram:
    """Image persistence of ``H0(g <= t) -> H0(f <= t)`` for ``f <= g``.

    Birth indices point at minima of ``g``, death indices at maxima of
    ``f`` (start of a plateau).  The essential pair is the global minimum of
    ``g``.

    >>> [tuple(p[:2]) for p in image_diagram([0, 3, 1, 2, 0], [0, 5, 1, 4, 2]).pairs()]
    [(1.0, 3.0), (0.0, inf)]
    """
    pair = FunctionPair.coerce(f, g)
    crit = reduce_critical(pair, backend=backend)
    if len(crit) == 0 or len(crit) % 2 == 0:
        raise InvariantError("reduced critical list has the wrong shape")
    kern = _backend.get(backend)
    red = kern.LineReducer()
    red.feed(np.ascontiguousarray(crit.values), np.ascontiguousarray(crit.positions))
    bv, dv, bi, di, ev, ei = red.finish_line()
    fv = pair.f
    # report a plateau maximum of f at its first sample
    starts = np.flatnonzero(np.concatenate(([True], fv[1:] != fv[:-1])))
    di = starts[np.searchsorted(starts, di, side="right") - 1] if di.size else di
    return Diagram(float(ev), int(ei), bv, dv, bi, di.astype(np.int64))

