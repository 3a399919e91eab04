"""Pure-Python backtracking search over bounded integer boxes.

Mirrors the compiled ``_kernel`` extension exactly (same branching order,
same output order) and is used whenever the extension is unavailable.
"""

from __future__ import annotations


class SearchLimitExceeded(RuntimeError):
    pass


def search(indptr, indices, coefs, rhs, lo, hi, bptr, bidx, bval, collect, limit):
    """Enumerate integer points with ``lo <= x <= hi`` and ``A x = rhs``.

    Rows of ``A`` and the blocking vectors are given in CSR form.  A branch is
    dropped once its lower bounds dominate some blocking vector.  Returns
    ``(count, points)``; ``points`` is empty unless ``collect``.
    """
    nv = len(lo)
    nr = len(rhs)
    rows = [
        (list(indices[indptr[r] : indptr[r + 1]]), list(coefs[indptr[r] : indptr[r + 1]]), rhs[r])
        for r in range(nr)
    ]
    var_rows = [[] for _ in range(nv)]
    for r, (idx, _, _) in enumerate(rows):
        for j in idx:
            var_rows[j].append(r)
    blocks = [
        list(zip(bidx[bptr[k] : bptr[k + 1]], bval[bptr[k] : bptr[k + 1]]))
        for k in range(len(bptr) - 1)
    ]
    points = []
    count = 0

    def propagate(lo, hi, queue):
        inq = [False] * nr
        for r in queue:
            inq[r] = True
        work = list(queue)
        while work:
            r = work.pop()
            inq[r] = False
            idx, co, b = rows[r]
            smin = smax = 0
            for j, a in zip(idx, co):
                if a > 0:
                    smin += a * lo[j]
                    smax += a * hi[j]
                else:
                    smin += a * hi[j]
                    smax += a * lo[j]
            if smin > b or smax < b:
                return False
            for j, a in zip(idx, co):
                if a > 0:
                    ub = (b - smin + a * lo[j]) // a
                    lb = -((smax - a * hi[j] - b) // a)
                else:
                    c = -a
                    ub = (smax + c * lo[j] - b) // c
                    lb = -((b - smin - c * hi[j]) // c)
                if lb > lo[j] or ub < hi[j]:
                    if lb > lo[j]:
                        lo[j] = lb
                    if ub < hi[j]:
                        hi[j] = ub
                    if lo[j] > hi[j]:
                        return False
                    for r2 in var_rows[j]:
                        if not inq[r2]:
                            inq[r2] = True
                            work.append(r2)
        return True

    def blocked(lo):
        for blk in blocks:
            if all(lo[j] >= v for j, v in blk):
                return True
        return False

    def dfs(lo, hi, queue):
        nonlocal count
        if not propagate(lo, hi, queue):
            return
        if blocks and blocked(lo):
            return
        best = -1
        width = None
        for j in range(nv):
            w = hi[j] - lo[j]
            if w > 0 and (width is None or w < width):
                best, width = j, w
        if best < 0:
            for idx, co, b in rows:
                if sum(a * lo[j] for j, a in zip(idx, co)) != b:
                    return
            count += 1
            if limit >= 0 and count > limit:
                raise SearchLimitExceeded(f"more than {limit} solutions")
            if collect:
                points.append(tuple(lo))
            return
        for v in range(lo[best], hi[best] + 1):
            lo2 = list(lo)
            hi2 = list(hi)
            lo2[best] = hi2[best] = v
            dfs(lo2, hi2, var_rows[best])

    dfs(list(lo), list(hi), list(range(nr)))
    return count, points
