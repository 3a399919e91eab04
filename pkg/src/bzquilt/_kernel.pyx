# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled backtracking search; same contract and output order as _pykernel.search."""

from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memcpy

import numpy as np

from bzquilt._pykernel import SearchLimitExceeded

ctypedef long long i64


cdef struct Ctx:
    int nv
    int nr
    i64* indptr
    i64* indices
    i64* coefs
    i64* rhs
    i64* vptr
    int* vrows
    int nb
    i64* bptr
    i64* bidx
    i64* bval
    i64* lo
    i64* hi
    int* work
    char* inq
    int collect
    i64 count
    i64 limit
    i64* out
    i64 out_cap
    int status


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    # b > 0
    cdef i64 q = a / b
    if a % b != 0 and a < 0:
        q -= 1
    return q


cdef int propagate(Ctx* c, i64* lo, i64* hi, int* seed, int nseed) nogil:
    cdef int nr = c.nr
    cdef int top = 0
    cdef int k, r, r2, p, j
    cdef i64 a, b, smin, smax, ub, lb, cc
    for k in range(nr):
        c.inq[k] = 0
    for k in range(nseed):
        r = seed[k]
        if not c.inq[r]:
            c.inq[r] = 1
            c.work[top] = r
            top += 1
    while top > 0:
        top -= 1
        r = c.work[top]
        c.inq[r] = 0
        b = c.rhs[r]
        smin = 0
        smax = 0
        for p in range(c.indptr[r], c.indptr[r + 1]):
            j = c.indices[p]
            a = c.coefs[p]
            if a > 0:
                smin += a * lo[j]
                smax += a * hi[j]
            else:
                smin += a * hi[j]
                smax += a * lo[j]
        if smin > b or smax < b:
            return 0
        for p in range(c.indptr[r], c.indptr[r + 1]):
            j = c.indices[p]
            a = c.coefs[p]
            if a > 0:
                ub = floordiv(b - smin + a * lo[j], a)
                lb = -floordiv(smax - a * hi[j] - b, a)
            else:
                cc = -a
                ub = floordiv(smax + cc * lo[j] - b, cc)
                lb = -floordiv(b - smin - cc * hi[j], cc)
            if lb > lo[j] or ub < hi[j]:
                if lb > lo[j]:
                    lo[j] = lb
                if ub < hi[j]:
                    hi[j] = ub
                if lo[j] > hi[j]:
                    return 0
                for k in range(c.vptr[j], c.vptr[j + 1]):
                    r2 = c.vrows[k]
                    if not c.inq[r2]:
                        c.inq[r2] = 1
                        c.work[top] = r2
                        top += 1
    return 1


cdef int blocked(Ctx* c, i64* lo) nogil:
    cdef int k, p
    cdef int ok
    for k in range(c.nb):
        ok = 1
        for p in range(c.bptr[k], c.bptr[k + 1]):
            if lo[c.bidx[p]] < c.bval[p]:
                ok = 0
                break
        if ok:
            return 1
    return 0


cdef int emit(Ctx* c, i64* lo) nogil:
    cdef int r, p
    cdef i64 s
    cdef i64* grown
    for r in range(c.nr):
        s = 0
        for p in range(c.indptr[r], c.indptr[r + 1]):
            s += c.coefs[p] * lo[c.indices[p]]
        if s != c.rhs[r]:
            return 0
    c.count += 1
    if c.limit >= 0 and c.count > c.limit:
        c.status = 1
        return -1
    if c.collect:
        if c.count > c.out_cap:
            c.out_cap = 2 * c.out_cap + 16
            grown = <i64*> realloc(c.out, c.out_cap * c.nv * sizeof(i64))
            if grown == NULL:
                c.status = 2
                return -1
            c.out = grown
        memcpy(c.out + (c.count - 1) * c.nv, lo, c.nv * sizeof(i64))
    return 0


cdef int dfs(Ctx* c, int depth, int* seed, int nseed) nogil:
    cdef int nv = c.nv
    cdef i64* lo = c.lo + depth * nv
    cdef i64* hi = c.hi + depth * nv
    cdef i64* lo2
    cdef i64* hi2
    cdef int j, best
    cdef i64 w, width, v
    if not propagate(c, lo, hi, seed, nseed):
        return 0
    if c.nb > 0 and blocked(c, lo):
        return 0
    best = -1
    width = 0
    for j in range(nv):
        w = hi[j] - lo[j]
        if w > 0 and (best < 0 or w < width):
            best = j
            width = w
    if best < 0:
        return emit(c, lo)
    lo2 = lo + nv
    hi2 = hi + nv
    v = lo[best]
    while v <= hi[best]:
        memcpy(lo2, lo, nv * sizeof(i64))
        memcpy(hi2, hi, nv * sizeof(i64))
        lo2[best] = v
        hi2[best] = v
        if dfs(c, depth + 1, c.vrows + c.vptr[best], <int> (c.vptr[best + 1] - c.vptr[best])) < 0:
            return -1
        v += 1
    return 0


def search(indptr, indices, coefs, rhs, lo, hi, bptr, bidx, bval, collect, limit):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef i64[::1] co = np.ascontiguousarray(coefs, dtype=np.int64)
    cdef i64[::1] rh = np.ascontiguousarray(rhs, dtype=np.int64)
    cdef i64[::1] bp = np.ascontiguousarray(bptr, dtype=np.int64)
    cdef i64[::1] bi = np.ascontiguousarray(bidx, dtype=np.int64)
    cdef i64[::1] bv = np.ascontiguousarray(bval, dtype=np.int64)
    cdef int nv = len(lo)
    cdef int nr = len(rh)
    cdef int j, k, r
    cdef Ctx c
    cdef i64[:, ::1] ov
    counts = np.zeros(nv + 1, dtype=np.int64)
    for r in range(nr):
        for k in range(ip[r], ip[r + 1]):
            counts[ix[k] + 1] += 1
    vptr_np = np.cumsum(counts).astype(np.int64)
    vrows_np = np.zeros(max(int(vptr_np[-1]), 1), dtype=np.int32)
    fill = vptr_np[:-1].copy()
    for r in range(nr):
        for k in range(ip[r], ip[r + 1]):
            j = ix[k]
            vrows_np[fill[j]] = r
            fill[j] += 1
    cdef i64[::1] vp = vptr_np
    cdef int[::1] vr = vrows_np
    c.nv = nv
    c.nr = nr
    c.indptr = &ip[0]
    c.indices = &ix[0] if ix.shape[0] else NULL
    c.coefs = &co[0] if co.shape[0] else NULL
    c.rhs = &rh[0] if nr else NULL
    c.vptr = &vp[0]
    c.vrows = &vr[0]
    c.nb = len(bp) - 1
    c.bptr = &bp[0]
    c.bidx = &bi[0] if bi.shape[0] else NULL
    c.bval = &bv[0] if bv.shape[0] else NULL
    c.collect = 1 if collect else 0
    c.count = 0
    c.limit = limit
    c.out = NULL
    c.out_cap = 0
    c.status = 0
    c.lo = <i64*> malloc((nv + 1) * max(nv, 1) * sizeof(i64))
    c.hi = <i64*> malloc((nv + 1) * max(nv, 1) * sizeof(i64))
    c.work = <int*> malloc(max(nr, 1) * sizeof(int))
    c.inq = <char*> malloc(max(nr, 1) * sizeof(char))
    cdef int* seed = <int*> malloc(max(nr, 1) * sizeof(int))
    for j in range(nv):
        c.lo[j] = lo[j]
        c.hi[j] = hi[j]
    for r in range(nr):
        seed[r] = r
    try:
        with nogil:
            dfs(&c, 0, seed, nr)
        if c.status == 1:
            raise SearchLimitExceeded(f"more than {limit} solutions")
        if c.status == 2:
            raise MemoryError("out of memory while collecting solutions")
        points = []
        if c.collect and c.count:
            out_np = np.empty((c.count, nv), dtype=np.int64)
            ov = out_np
            for k in range(c.count):
                for j in range(nv):
                    ov[k, j] = c.out[k * nv + j]
            points = [tuple(row) for row in out_np.tolist()]
        return c.count, points
    finally:
        free(c.lo)
        free(c.hi)
        free(c.work)
        free(c.inq)
        free(seed)
        free(c.out)

