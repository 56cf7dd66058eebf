"""Reference diagrams by sorting and union-find.

This is the textbook route: activate samples in increasing order, join
each new sample with its already-active neighbours, and let the younger of
two merging components die.  It is deliberately written without any of the
reducer machinery so the two can check each other.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import _backend
from .core import Diagram, FunctionPair, FunctionSample, PersistencePair, Topology

__all__ = ["DisjointSet", "oracle_line", "oracle_circle", "oracle_image", "oracle_line_fast"]


class DisjointSet:
    """Union by rank with path compression; each root carries a birth record.

    A birth record is any comparable object (``None`` for "not born yet").
    After a union the root holds the smaller of the two records.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.birth: list[Optional[tuple]] = [None] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        ba, bb = self.birth[ra], self.birth[rb]
        if ba is None or (bb is not None and bb < ba):
            self.birth[ra] = bb
        return ra


def _run_keys(vals: list[float], cyclic: bool) -> tuple[list[int], list[tuple]]:
    # Each maximal run of equal neighbours is keyed by its smallest index and
    # activated outwards from it, so a run behaves like a single sample.
    n = len(vals)
    rep = [0] * n
    dist = [0] * n
    if cyclic and all(v == vals[0] for v in vals):
        runs = [list(range(n))]
    else:
        start = 0
        if cyclic:
            start = next(b for b in range(n) if vals[b] != vals[b - 1])
        runs = []
        for k in range(n):
            p = (start + k) % n
            if runs and vals[p] == vals[runs[-1][-1]] and (cyclic or p > 0):
                runs[-1].append(p)
            else:
                runs.append([p])
    for run in runs:
        r = min(run)
        t0 = run.index(r)
        for t, p in enumerate(run):
            rep[p] = r
            dist[p] = abs(t - t0)
    keys = [(vals[i], rep[i], dist[i], i) for i in range(n)]
    return rep, keys


def _sweep(values, cyclic: bool) -> Diagram:
    sample = FunctionSample.coerce(values, Topology.CIRCLE if cyclic else Topology.LINE)
    vals = sample.values.tolist()
    n = len(vals)
    rep, keys = _run_keys(vals, cyclic)
    ds = DisjointSet(n)
    active = [False] * n
    pairs: list[PersistencePair] = []
    for v in sorted(range(n), key=keys.__getitem__):
        active[v] = True
        ds.birth[v] = (keys[v], v)
        if cyclic:
            nbrs = {(v - 1) % n, (v + 1) % n} - {v}
        else:
            nbrs = {u for u in (v - 1, v + 1) if 0 <= u < n}
        for u in sorted(nbrs):
            if not active[u]:
                continue
            ru, rv = ds.find(u), ds.find(v)
            if ru == rv:
                # closing the cycle: nothing dies in dimension 0
                continue
            younger = max(ds.birth[ru], ds.birth[rv])
            ds.union(ru, rv)
            b = younger[1]
            if b == v:
                # v itself just joined an existing component
                continue
            if vals[b] == vals[v]:
                continue
            pairs.append(PersistencePair(vals[b], vals[v], rep[b], rep[v]))
    root_birth = ds.birth[ds.find(0)][1]
    pairs.append(PersistencePair(vals[root_birth], math.inf, rep[root_birth], None))
    return Diagram.from_pairs(pairs)


def oracle_line(values) -> Diagram:
    """Diagram of a function on a segment by sort + union-find.

    >>> [tuple(p[:2]) for p in oracle_line([0, 2, 1, 3]).pairs()]
    [(1.0, 2.0), (0.0, inf)]
    """
    return _sweep(values, cyclic=False)


def oracle_circle(values) -> Diagram:
    """Same sweep with vertex ``i`` adjacent to ``i +- 1 mod n``."""
    return _sweep(values, cyclic=True)


def oracle_image(f, g=None) -> Diagram:
    """Image persistence of sublevel sets of ``g`` inside those of ``f``.

    Components are tracked over the ``f``-sublevel set; a component becomes
    visible in the image once it holds a sample whose ``g`` value has been
    reached.  When two visible components merge, the younger one dies; a
    merge involving an invisible component reports nothing.
    """
    pair = FunctionPair.coerce(f, g)
    fv = pair.f.tolist()
    gv = pair.g.tolist()
    n = len(fv)
    # kind 0 activates a sample in the f-sublevel set, kind 1 reaches its g value
    events = sorted([(fv[i], i, 0) for i in range(n)] + [(gv[i], i, 1) for i in range(n)])
    ds = DisjointSet(n)
    active = [False] * n
    pairs: list[PersistencePair] = []
    for value, v, kind in events:
        if kind == 1:
            r = ds.find(v)
            if ds.birth[r] is None:
                ds.birth[r] = (value, v)
            continue
        active[v] = True
        for u in (v - 1, v + 1):
            if not (0 <= u < n and active[u]):
                continue
            ru, rv = ds.find(u), ds.find(v)
            if ru == rv:
                continue
            bu, bv = ds.birth[ru], ds.birth[rv]
            ds.union(ru, rv)
            if bu is None or bv is None:
                continue
            younger = max(bu, bv)
            if younger[0] == value:
                continue
            j = v
            while j > 0 and fv[j - 1] == fv[j]:
                j -= 1
            pairs.append(PersistencePair(younger[0], value, younger[1], j))
    root = ds.birth[ds.find(0)]
    pairs.append(PersistencePair(root[0], math.inf, root[1], None))
    return Diagram.from_pairs(pairs)


def oracle_line_fast(values, backend: str | None = None) -> Diagram:
    """Stable argsort + union-find sweep; the n log n baseline for benchmarks."""
    sample = FunctionSample.coerce(values, Topology.LINE)
    vals = sample.values
    order = np.argsort(vals, kind="stable")
    bi, di, ei = _backend.get(backend).uf_sweep(vals, order)
    del order
    return Diagram(float(vals[ei]), int(ei), vals[bi], vals[di], bi, di)
