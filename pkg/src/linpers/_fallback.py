"""Pure-Python implementations of the compiled kernels.

Selected automatically when :mod:`linpers._kernels` is not built, or when
``LINPERS_PURE_PYTHON=1``.  Behaviour (outputs, errors, counters) is
identical to the compiled module; the test suite runs against both.
"""

from __future__ import annotations

import math

import numpy as np

from .core import InputError, InvariantError
from .stack import ReducerStack, _lt

__all__ = ["LineReducer", "reduce_segment", "reduce_events", "uf_sweep"]


def _arrays(bv, dv, bi, di):
    return (
        np.asarray(bv, dtype=np.float64),
        np.asarray(dv, dtype=np.float64),
        np.asarray(bi, dtype=np.int64),
        np.asarray(di, dtype=np.int64),
    )


class LineReducer:
    def __init__(self):
        self._stack = ReducerStack()
        self._count = 0
        self._last = None
        self._done = False

    @property
    def pushes(self) -> int:
        return self._stack.pushes

    @property
    def pops(self) -> int:
        return self._stack.pops

    def feed(self, values, indices=None):
        if self._done:
            raise InvariantError("reducer already finished")
        vals = np.asarray(values, dtype=np.float64).tolist()
        if indices is None:
            idxs = range(self._count, self._count + len(vals))
        else:
            idxs = np.asarray(indices, dtype=np.int64).tolist()
            if len(idxs) != len(vals):
                raise ValueError("values and indices differ in length")
        push = self._stack.push
        last = self._last
        for x, i in zip(vals, idxs):
            if not math.isfinite(x):
                self._last = last
                raise InputError(f"non-finite value at index {i}")
            if x == last:
                continue
            last = x
            push(x, i)
        self._last = last
        self._count += len(vals)

    def feed_cyclic(self, values):
        if self._done or self._count or len(self._stack):
            raise InvariantError("feed_cyclic needs a fresh reducer")
        vals = np.asarray(values, dtype=np.float64).tolist()
        n = len(vals)
        if n == 0:
            raise InputError("empty sample")
        for k, x in enumerate(vals):
            if not math.isfinite(x):
                raise InputError(f"non-finite value at index {k}")
        a = min(range(n), key=vals.__getitem__)
        v0 = vals[0]
        j = n
        if vals[-1] == v0:
            j = n - 1
            while j > 0 and vals[j - 1] == v0:
                j -= 1
        s = j if (a == 0 and j < n) else a
        push = self._stack.push
        prev = None
        for k in range(n):
            p = (s + k) % n
            x = vals[p]
            if k > 0 and x == prev:
                continue
            prev = x
            push(x, 0 if p == j else p)
        self._count = n

    def _finish(self, essential):
        self._done = True
        st = self._stack
        return (
            *_arrays(st.birth_values, st.death_values, st.birth_indices, st.death_indices),
            essential.birth_value,
            essential.birth_index,
        )

    def finish_line(self):
        if not len(self._stack):
            raise InputError("empty sample")
        return self._finish(self._stack.teardown())

    def finish_circle(self):
        if not len(self._stack):
            raise InputError("empty sample")
        return self._finish(self._stack.close_cycle())

    def stack(self):
        st = self._stack
        return np.asarray(st.values, dtype=np.float64), np.asarray(st.indices, dtype=np.int64)


def reduce_segment(values, indices):
    vals = np.asarray(values, dtype=np.float64).tolist()
    idxs = np.asarray(indices, dtype=np.int64).tolist()
    if len(vals) != len(idxs):
        raise ValueError("values and indices differ in length")
    V: list[float] = []
    I: list[int] = []
    bv, dv, bi, di = [], [], [], []
    last = None
    for k, (x, xi) in enumerate(zip(vals, idxs)):
        if k > 0 and x == last:
            continue
        last = x
        while True:
            s = len(V)
            if s >= 2:
                if _lt(V[-2], I[-2], V[-1], I[-1]):
                    drop = _lt(V[-1], I[-1], x, xi)
                else:
                    drop = _lt(x, xi, V[-1], I[-1])
                if drop:
                    V.pop()
                    I.pop()
                    continue
            if s >= 3:
                o, p, q = (V[-3], I[-3]), (V[-2], I[-2]), (V[-1], I[-1])
                if o < q < p < (x, xi):
                    bv.append(q[0]); bi.append(q[1])
                    dv.append(p[0]); di.append(p[1])
                    del V[-2:], I[-2:]
                    continue
                if (x, xi) < p < q < o:
                    bv.append(p[0]); bi.append(p[1])
                    dv.append(q[0]); di.append(q[1])
                    del V[-2:], I[-2:]
                    continue
            break
        V.append(x)
        I.append(xi)
    return (np.asarray(V, dtype=np.float64), np.asarray(I, dtype=np.int64), *_arrays(bv, dv, bi, di))


def reduce_events(kinds, values, positions):
    kinds = np.asarray(kinds, dtype=np.uint8).tolist()
    vals = np.asarray(values, dtype=np.float64).tolist()
    pos = np.asarray(positions, dtype=np.int64).tolist()
    if not (len(kinds) == len(vals) == len(pos)):
        raise ValueError("event arrays differ in length")
    keys = list(zip(vals, pos, kinds))
    st: list[int] = []
    for e, ke in enumerate(keys):
        while True:
            if not st:
                if kinds[e] == 1:
                    st.append(e)
                break
            t = st[-1]
            if kinds[e] == 1:
                if kinds[t] == 1:
                    # two minima in a row: keep the lower
                    if ke < keys[t]:
                        st.pop()
                        continue
                    break
                # a minimum above the maximum before it is never born in the image
                if ke < keys[t]:
                    st.append(e)
                break
            if kinds[t] == 1:
                # a maximum below its left minimum merges nothing visible
                if keys[t] < ke:
                    st.append(e)
                break
            # two maxima in a row: keep the higher
            if keys[t] < ke:
                st.pop()
                continue
            break
    if st and kinds[st[-1]] == 0:
        st.pop()
    return np.asarray(st, dtype=np.int64)


def uf_sweep(values, order):
    vals = np.asarray(values, dtype=np.float64).tolist()
    order = np.asarray(order, dtype=np.int64).tolist()
    n = len(vals)
    if n == 0:
        raise InputError("empty sample")
    if len(order) != n:
        raise ValueError("order has the wrong length")
    parent = [-1] * n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bi, di = [], []
    for v in order:
        left = v > 0 and parent[v - 1] >= 0
        right = v + 1 < n and parent[v + 1] >= 0
        if left and right:
            rl, rr = find(v - 1), find(v + 1)
            old, young = (rr, rl) if (vals[rr], rr) < (vals[rl], rl) else (rl, rr)
            parent[young] = old
            parent[v] = old
            j = v
            while j > 0 and vals[j - 1] == vals[j]:
                j -= 1
            if vals[young] != vals[v]:
                bi.append(young)
                di.append(j)
        elif left:
            parent[v] = v - 1
        elif right:
            parent[v] = v + 1
        else:
            parent[v] = v
    return np.asarray(bi, dtype=np.int64), np.asarray(di, dtype=np.int64), find(order[0])
