"""Shared generators and reference helpers for the test suite."""

from __future__ import annotations

import math

import numpy as np

from linpers.core import Diagram, PersistencePair, strict_minima_count


def random_tied(rng, max_len=200, levels=8, min_len=1):
    n = int(rng.integers(min_len, max_len + 1))
    return rng.integers(0, levels, n).astype(np.float64)


def dominated_pair(rng, max_len=200, levels=10, noise=4):
    n = int(rng.integers(1, max_len + 1))
    g = rng.integers(0, levels, n).astype(np.float64)
    f = g - rng.integers(0, noise, n)
    return f, g


def check_structure(dgm: Diagram, values, cyclic=False) -> None:
    """One essential pair at the global minimum, minima count identity, no reused index."""
    values = np.asarray(values, dtype=np.float64)
    ess = [p for p in dgm.pairs() if p.essential]
    assert len(ess) == 1
    assert ess[0].birth_value == values.min()
    assert dgm.n_finite == strict_minima_count(values, cyclic=cyclic) - 1
    assert np.all(dgm.birth_values < dgm.death_values)
    births = dgm.birth_indices.tolist() + [dgm.essential_index]
    deaths = dgm.death_indices.tolist()
    assert len(set(births)) == len(births)
    assert len(set(deaths)) == len(deaths)


def local_graph_diagram(f, g) -> Diagram:
    """Image persistence done the tempting, wrong way.

    Vertices are the strict local minima of ``g``; consecutive ones are
    joined by an edge whose value is the maximum of ``f`` between them.
    This ignores that a low maximum of ``f`` between two inner minima can
    join components that ``g`` has not born yet.
    """
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    n = g.size
    mins = [
        i for i in range(n)
        if (i == 0 or g[i] < g[i - 1]) and (i == n - 1 or g[i] <= g[i + 1])
    ]
    births = [(float(g[t]), t) for t in mins]
    edges = []
    for k in range(len(mins) - 1):
        a, b = mins[k], mins[k + 1]
        seg = f[a : b + 1]
        j = a + int(np.argmax(seg))
        w = max((float(f[j]), j), births[k], births[k + 1])
        edges.append((w, k))
    parent = list(range(len(mins)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    root_birth = dict(enumerate(births))
    pairs = []
    for (w, j), k in sorted(edges):
        ra, rb = find(k), find(k + 1)
        ba, bb = root_birth[ra], root_birth[rb]
        old, young = (ra, rb) if ba < bb else (rb, ra)
        parent[young] = old
        if root_birth[young][0] != w:
            pairs.append(PersistencePair(root_birth[young][0], w, root_birth[young][1], j))
    e = root_birth[find(0)]
    pairs.append(PersistencePair(e[0], math.inf, e[1], None))
    return Diagram.from_pairs(pairs)
