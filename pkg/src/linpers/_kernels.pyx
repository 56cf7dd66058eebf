# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops.

Same contracts as :mod:`linpers._fallback`; see that module for the
reference behaviour.  Growable buffers are plain C arrays handed over to
NumPy without a copy when a reduction finishes.
"""

cimport cython
from cython.view cimport array as cvarray
from libc.math cimport isfinite
from libc.stdint cimport int64_t, uint8_t, uint32_t
from libc.stdlib cimport free, malloc, realloc

import numpy as np

from .core import InputError, InvariantError


cdef struct DVec:
    double* data
    Py_ssize_t size
    Py_ssize_t cap

cdef struct IVec:
    int64_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef inline int dvec_push(DVec* v, double x) noexcept nogil:
    cdef Py_ssize_t nc
    cdef double* p
    if v.size == v.cap:
        nc = v.cap + (v.cap >> 1) if v.cap >= 1024 else 1024
        p = <double*> realloc(v.data, nc * sizeof(double))
        if p == NULL:
            return -1
        v.data = p
        v.cap = nc
    v.data[v.size] = x
    v.size += 1
    return 0


cdef inline int ivec_push(IVec* v, int64_t x) noexcept nogil:
    cdef Py_ssize_t nc
    cdef int64_t* p
    if v.size == v.cap:
        nc = v.cap + (v.cap >> 1) if v.cap >= 1024 else 1024
        p = <int64_t*> realloc(v.data, nc * sizeof(int64_t))
        if p == NULL:
            return -1
        v.data = p
        v.cap = nc
    v.data[v.size] = x
    v.size += 1
    return 0


cdef object _hand_over(void** slot, Py_ssize_t n, Py_ssize_t itemsize, str fmt, object dtype):
    # Transfer ownership of *slot to a NumPy array of length n; clears *slot.
    cdef void* p = slot[0]
    cdef void* q
    cdef cvarray arr
    if n == 0 or p == NULL:
        free(p)
        slot[0] = NULL
        return np.empty(0, dtype=dtype)
    q = realloc(p, n * itemsize)
    if q != NULL:
        p = q
    slot[0] = NULL
    arr = cvarray(shape=(n,), itemsize=itemsize, format=fmt, mode="c", allocate_buffer=False)
    arr.data = <char*> p
    arr.callback_free_data = free
    return np.asarray(arr)


cdef object dvec_take(DVec* v):
    cdef Py_ssize_t n = v.size
    out = _hand_over(<void**> &v.data, n, sizeof(double), "d", np.float64)
    v.size = 0
    v.cap = 0
    return out


cdef object ivec_take(IVec* v):
    cdef Py_ssize_t n = v.size
    out = _hand_over(<void**> &v.data, n, sizeof(int64_t), "q", np.int64)
    v.size = 0
    v.cap = 0
    return out


cdef inline bint lt(double av, int64_t ai, double bv, int64_t bi) noexcept nogil:
    return av < bv or (av == bv and ai < bi)


@cython.final
cdef class LineReducer:
    """Streaming reducer: narrowing stack over a virtual ``+inf`` sentinel."""

    cdef DVec sv
    cdef IVec si
    cdef DVec bv, dv
    cdef IVec bi, di
    cdef double last
    cdef bint has_last
    cdef int64_t count
    cdef readonly int64_t pushes
    cdef readonly int64_t pops
    cdef bint done

    def __dealloc__(self):
        free(self.sv.data)
        free(self.si.data)
        free(self.bv.data)
        free(self.dv.data)
        free(self.bi.data)
        free(self.di.data)

    cdef inline int _emit(self, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
        if dvec_push(&self.bv, self.sv.data[lo]) < 0:
            return -1
        if dvec_push(&self.dv, self.sv.data[hi]) < 0:
            return -1
        if ivec_push(&self.bi, self.si.data[lo]) < 0:
            return -1
        if ivec_push(&self.di, self.si.data[hi]) < 0:
            return -1
        return 0

    cdef inline int _push(self, double v, int64_t i) noexcept nogil:
        cdef Py_ssize_t s, t
        cdef double* vals
        cdef int64_t* idx
        while True:
            s = self.sv.size
            if s == 0:
                break
            vals = self.sv.data
            idx = self.si.data
            t = s - 1
            if s & 1:
                if lt(v, i, vals[t], idx[t]):
                    self.sv.size = t
                    self.si.size = t
                    self.pops += 1
                    continue
                if s >= 2 and lt(vals[t - 1], idx[t - 1], v, i):
                    if self._emit(t, t - 1) < 0:
                        return -1
                    self.sv.size = t - 1
                    self.si.size = t - 1
                    self.pops += 2
                    continue
                break
            if lt(vals[t], idx[t], v, i):
                self.sv.size = t
                self.si.size = t
                self.pops += 1
                continue
            if lt(v, i, vals[t - 1], idx[t - 1]):
                if self._emit(t - 1, t) < 0:
                    return -1
                self.sv.size = t - 1
                self.si.size = t - 1
                self.pops += 2
                continue
            break
        if dvec_push(&self.sv, v) < 0 or ivec_push(&self.si, i) < 0:
            return -1
        self.pushes += 1
        return 0

    def feed(self, const double[::1] values, const int64_t[::1] indices=None):
        cdef Py_ssize_t n = values.shape[0]
        cdef Py_ssize_t k
        cdef Py_ssize_t bad = -1
        cdef int err = 0
        cdef double x
        cdef double last = self.last
        cdef bint has_last = self.has_last
        cdef bint use_idx = indices is not None
        cdef int64_t base = self.count
        if self.done:
            raise InvariantError("reducer already finished")
        if use_idx and indices.shape[0] != n:
            raise ValueError("values and indices differ in length")
        with nogil:
            for k in range(n):
                x = values[k]
                if not isfinite(x):
                    bad = k
                    break
                if has_last and x == last:
                    continue
                last = x
                has_last = True
                if self._push(x, indices[k] if use_idx else base + k) < 0:
                    err = 1
                    break
        self.last = last
        self.has_last = has_last
        if bad >= 0:
            raise InputError(f"non-finite value at index {indices[bad] if use_idx else base + bad}")
        if err:
            raise MemoryError("reducer stack allocation failed")
        self.count += n

    def feed_cyclic(self, const double[::1] values):
        cdef Py_ssize_t n = values.shape[0]
        cdef Py_ssize_t k, p, s, j, a = 0
        cdef Py_ssize_t bad = -1
        cdef int err = 0
        cdef double x, prev = 0.0, v0
        if self.done or self.count or self.sv.size:
            raise InvariantError("feed_cyclic needs a fresh reducer")
        if n == 0:
            raise InputError("empty sample")
        with nogil:
            for k in range(n):
                x = values[k]
                if not isfinite(x):
                    bad = k
                    break
                if x < values[a]:
                    a = k
            if bad < 0:
                v0 = values[0]
                j = n
                if values[n - 1] == v0:
                    j = n - 1
                    while j > 0 and values[j - 1] == v0:
                        j -= 1
                s = j if (a == 0 and j < n) else a
                for k in range(n):
                    p = s + k
                    if p >= n:
                        p -= n
                    x = values[p]
                    if k > 0 and x == prev:
                        continue
                    prev = x
                    if self._push(x, 0 if p == j else p) < 0:
                        err = 1
                        break
        if bad >= 0:
            raise InputError(f"non-finite value at index {bad}")
        if err:
            raise MemoryError("reducer stack allocation failed")
        self.count = n

    def _finish(self):
        self.done = True
        ev = self.sv.data[0]
        ei = self.si.data[0]
        return (
            dvec_take(&self.bv),
            dvec_take(&self.dv),
            ivec_take(&self.bi),
            ivec_take(&self.di),
            ev,
            ei,
        )

    def finish_line(self):
        cdef Py_ssize_t t
        if self.sv.size == 0:
            raise InputError("empty sample")
        if self.sv.size % 2 == 0:
            self.sv.size -= 1
            self.si.size -= 1
            self.pops += 1
        while self.sv.size > 1:
            t = self.sv.size - 1
            if self._emit(t, t - 1) < 0:
                raise MemoryError()
            self.sv.size = t - 1
            self.si.size = t - 1
            self.pops += 2
        return self._finish()

    def finish_circle(self):
        cdef Py_ssize_t t
        if self.sv.size == 0:
            raise InputError("empty sample")
        if self.sv.size > 1 and self.sv.size % 2 == 1:
            self.sv.size -= 1
            self.si.size -= 1
            self.pops += 1
        while self.sv.size > 2:
            t = self.sv.size - 1
            if self._emit(t - 1, t) < 0:
                raise MemoryError()
            self.sv.size = t - 1
            self.si.size = t - 1
            self.pops += 2
        return self._finish()

    def stack(self):
        cdef Py_ssize_t k
        vals = np.empty(self.sv.size, dtype=np.float64)
        idxs = np.empty(self.sv.size, dtype=np.int64)
        for k in range(self.sv.size):
            vals[k] = self.sv.data[k]
            idxs[k] = self.si.data[k]
        return vals, idxs


def reduce_segment(const double[::1] values, const int64_t[::1] indices):
    """Reduce a slice to 2-phase shape using only interior rules."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t k, s
    cdef DVec sv, bv, dv
    cdef IVec si, bi, di
    cdef double x, last = 0.0
    cdef int64_t xi
    cdef double* V
    cdef int64_t* I
    cdef int err = 0
    cdef bint drop
    if indices.shape[0] != n:
        raise ValueError("values and indices differ in length")
    sv.data = NULL; sv.size = 0; sv.cap = 0
    bv.data = NULL; bv.size = 0; bv.cap = 0
    dv.data = NULL; dv.size = 0; dv.cap = 0
    si.data = NULL; si.size = 0; si.cap = 0
    bi.data = NULL; bi.size = 0; bi.cap = 0
    di.data = NULL; di.size = 0; di.cap = 0
    try:
        with nogil:
            for k in range(n):
                x = values[k]
                if k > 0 and x == last:
                    continue
                last = x
                xi = indices[k]
                while True:
                    s = sv.size
                    V = sv.data
                    I = si.data
                    if s >= 2:
                        # 123 or 321 ending at x: the top is a monotone middle
                        if lt(V[s - 2], I[s - 2], V[s - 1], I[s - 1]):
                            drop = lt(V[s - 1], I[s - 1], x, xi)
                        else:
                            drop = lt(x, xi, V[s - 1], I[s - 1])
                        if drop:
                            sv.size = s - 1
                            si.size = s - 1
                            continue
                    if s >= 3:
                        # 1324: o < q < p < x  -> pair (q, p)
                        if (lt(V[s - 3], I[s - 3], V[s - 1], I[s - 1])
                                and lt(V[s - 1], I[s - 1], V[s - 2], I[s - 2])
                                and lt(V[s - 2], I[s - 2], x, xi)):
                            if (dvec_push(&bv, V[s - 1]) < 0 or dvec_push(&dv, V[s - 2]) < 0
                                    or ivec_push(&bi, I[s - 1]) < 0 or ivec_push(&di, I[s - 2]) < 0):
                                err = 1
                                break
                            sv.size = s - 2
                            si.size = s - 2
                            continue
                        # 4231: x < p < q < o  -> pair (p, q)
                        if (lt(x, xi, V[s - 2], I[s - 2])
                                and lt(V[s - 2], I[s - 2], V[s - 1], I[s - 1])
                                and lt(V[s - 1], I[s - 1], V[s - 3], I[s - 3])):
                            if (dvec_push(&bv, V[s - 2]) < 0 or dvec_push(&dv, V[s - 1]) < 0
                                    or ivec_push(&bi, I[s - 2]) < 0 or ivec_push(&di, I[s - 1]) < 0):
                                err = 1
                                break
                            sv.size = s - 2
                            si.size = s - 2
                            continue
                    break
                if err:
                    break
                if dvec_push(&sv, x) < 0 or ivec_push(&si, xi) < 0:
                    err = 1
                    break
        if err:
            raise MemoryError("segment stack allocation failed")
        return (
            dvec_take(&sv),
            ivec_take(&si),
            dvec_take(&bv),
            dvec_take(&dv),
            ivec_take(&bi),
            ivec_take(&di),
        )
    finally:
        free(sv.data); free(si.data)
        free(bv.data); free(dv.data)
        free(bi.data); free(di.data)


cdef inline bint ev_lt(double av, int64_t ap, uint8_t ak, double bv, int64_t bp, uint8_t bk) noexcept nogil:
    if av != bv:
        return av < bv
    if ap != bp:
        return ap < bp
    return ak < bk


def reduce_events(const uint8_t[::1] kinds, const double[::1] values, const int64_t[::1] positions):
    """Greedy between-minima / between-maxima reduction of an event list.

    ``kinds``: 0 for a local maximum of the lower function, 1 for a local
    minimum of the upper one.  Returns the ids of the surviving events.
    """
    cdef Py_ssize_t n = kinds.shape[0]
    cdef Py_ssize_t e, t
    cdef IVec st
    cdef int err = 0
    if values.shape[0] != n or positions.shape[0] != n:
        raise ValueError("event arrays differ in length")
    st.data = NULL; st.size = 0; st.cap = 0
    try:
        with nogil:
            for e in range(n):
                while True:
                    if st.size == 0:
                        if kinds[e] == 1:
                            err = ivec_push(&st, e)
                        break
                    t = st.data[st.size - 1]
                    if kinds[e] == 1:
                        if kinds[t] == 1:
                            if ev_lt(values[e], positions[e], 1, values[t], positions[t], 1):
                                st.size -= 1
                                continue
                            break
                        if ev_lt(values[e], positions[e], 1, values[t], positions[t], 0):
                            err = ivec_push(&st, e)
                        break
                    else:
                        if kinds[t] == 1:
                            if ev_lt(values[t], positions[t], 1, values[e], positions[e], 0):
                                err = ivec_push(&st, e)
                            break
                        if ev_lt(values[t], positions[t], 0, values[e], positions[e], 0):
                            st.size -= 1
                            continue
                        break
                if err:
                    break
            if not err and st.size and kinds[st.data[st.size - 1]] == 0:
                st.size -= 1
        if err:
            raise MemoryError("event stack allocation failed")
        return ivec_take(&st)
    finally:
        free(st.data)


cdef inline uint32_t uf_find(uint32_t* parent, uint32_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def uf_sweep(const double[::1] values, const int64_t[::1] order):
    """Sort-based baseline: activate vertices in ``order``, union-find with the elder rule.

    Each root is its component's birth vertex.  Returns finite-pair birth
    and death indices (the death index moved to the start of its run of
    equal values) and the essential index.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t k, m = 0, npairs
    cdef uint32_t* parent
    cdef uint32_t v, rv, ru, young, old, INACTIVE = 0xFFFFFFFF
    cdef bint left, right
    cdef int64_t[::1] bi
    cdef int64_t[::1] di
    cdef int64_t j
    if n == 0:
        raise InputError("empty sample")
    if n >= 0xFFFFFFFF:
        raise ValueError("baseline supports fewer than 2**32 - 1 samples")
    if order.shape[0] != n:
        raise ValueError("order has the wrong length")
    with nogil:
        for k in range(n):
            if (k == 0 or values[k] < values[k - 1]) and (k == n - 1 or values[k] <= values[k + 1]):
                m += 1
    npairs = m - 1
    bi_arr = np.empty(npairs, dtype=np.int64)
    di_arr = np.empty(npairs, dtype=np.int64)
    bi = bi_arr
    di = di_arr
    parent = <uint32_t*> malloc(n * sizeof(uint32_t))
    if parent == NULL:
        raise MemoryError("baseline allocation failed")
    m = 0
    try:
        with nogil:
            for k in range(n):
                parent[k] = INACTIVE
            for k in range(n):
                v = <uint32_t> order[k]
                left = v > 0 and parent[v - 1] != INACTIVE
                right = v + 1 < n and parent[v + 1] != INACTIVE
                if left and right:
                    rv = uf_find(parent, v - 1)
                    ru = uf_find(parent, v + 1)
                    if lt(values[ru], ru, values[rv], rv):
                        old = ru
                        young = rv
                    else:
                        old = rv
                        young = ru
                    parent[young] = old
                    parent[v] = old
                    j = v
                    while j > 0 and values[j - 1] == values[j]:
                        j -= 1
                    if values[young] != values[v] and m < npairs:
                        bi[m] = young
                        di[m] = j
                        m += 1
                elif left:
                    parent[v] = v - 1
                elif right:
                    parent[v] = v + 1
                else:
                    parent[v] = v
            v = uf_find(parent, <uint32_t> order[0])
    finally:
        free(parent)
    if m < npairs:
        # plateaus stepping down give zero-persistence pairs, which are skipped
        bi_arr = bi_arr[:m].copy()
        di_arr = di_arr[:m].copy()
    return bi_arr, di_arr, int(v)
