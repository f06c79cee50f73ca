"""Compiled inner loops for facet arrays and modular elimination.

Facet arrays are ``(N, w)`` int32 with each row's vertex ids sorted
ascending and ``-1`` padding at the end.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def row_sizes(rows):
    N, w = rows.shape
    out = np.zeros(N, dtype=np.int64)
    for r in range(N):
        s = 0
        for c in range(w):
            if rows[r, c] >= 0:
                s += 1
        out[r] = s
    return out


@njit(cache=True)
def _is_subset(a, sa, b, sb):
    # a[:sa] and b[:sb] sorted ascending
    i = 0
    j = 0
    while i < sa:
        if sb - j < sa - i:
            return False
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] > b[j]:
            j += 1
        else:
            return False
    return True


@njit(cache=True)
def maximal_mask(rows, sizes, n_ids):
    """Mask of rows not strictly contained in another row.

    ``rows`` must be free of duplicates and ordered by size descending.
    """
    N, w = rows.shape
    counts = np.zeros(n_ids + 1, dtype=np.int64)
    for r in range(N):
        for c in range(sizes[r]):
            counts[rows[r, c] + 1] += 1
    ptr = np.cumsum(counts)
    fill = ptr[:-1].copy()
    inc = np.empty(ptr[-1], dtype=np.int64)
    for r in range(N):
        for c in range(sizes[r]):
            v = rows[r, c]
            inc[fill[v]] = r
            fill[v] += 1
    keep = np.ones(N, dtype=np.bool_)
    for r in range(N):
        s = sizes[r]
        if s == 0:
            keep[r] = False
            continue
        best = rows[r, 0]
        bc = ptr[best + 1] - ptr[best]
        for c in range(1, s):
            v = rows[r, c]
            d = ptr[v + 1] - ptr[v]
            if d < bc:
                bc = d
                best = v
        for k in range(ptr[best], ptr[best + 1]):
            t = inc[k]
            if sizes[t] <= s:
                break
            if _is_subset(rows[r], s, rows[t], sizes[t]):
                keep[r] = False
                break
    return keep


@njit(cache=True)
def _n_choose(n, k):
    if k < 0 or k > n:
        return 0
    r = 1
    for i in range(k):
        r = r * (n - i) // (i + 1)
    return r


@njit(cache=True)
def subsets_of_size(rows, sizes, k):
    """All ``k``-element subsets of each row, with duplicates."""
    N = rows.shape[0]
    total = 0
    for r in range(N):
        total += _n_choose(sizes[r], k)
    out = np.empty((total, k), dtype=rows.dtype)
    idx = np.empty(k, dtype=np.int64)
    pos = 0
    for r in range(N):
        s = sizes[r]
        if s < k:
            continue
        for i in range(k):
            idx[i] = i
        while True:
            for i in range(k):
                out[pos, i] = rows[r, idx[i]]
            pos += 1
            i = k - 1
            while i >= 0 and idx[i] == s - k + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, k):
                idx[j] = idx[j - 1] + 1
    return out


@njit(cache=True)
def drop_one(faces):
    """Codimension-one faces: row ``r * k + i`` is face ``r`` without vertex ``i``."""
    N, k = faces.shape
    out = np.empty((N * k, max(k - 1, 0)), dtype=faces.dtype)
    for r in range(N):
        for i in range(k):
            c = 0
            for j in range(k):
                if j != i:
                    out[r * k + i, c] = faces[r, j]
                    c += 1
    return out


@njit(cache=True)
def _heap_push(heap, size, x):
    # max-heap of int64
    heap[size] = x
    i = size
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] >= heap[i]:
            break
        t = heap[p]
        heap[p] = heap[i]
        heap[i] = t
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        m = l
        if l + 1 < size and heap[l + 1] > heap[l]:
            m = l + 1
        if heap[i] >= heap[m]:
            break
        t = heap[m]
        heap[m] = heap[i]
        heap[i] = t
        i = m
    return top, size


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a in [1, p)
    t0, t1 = 0, 1
    r0, r1 = p, a
    while r1 != 0:
        q = r0 // r1
        t0, t1 = t1, t0 - q * t1
        r0, r1 = r1, r0 - q * r1
    if t0 < 0:
        t0 += p
    return t0


@njit(cache=True)
def rank_mod_p(indptr, indices, data, n_rows, p, skip):
    """Rank of a sparse column matrix over GF(p) by pivot-on-last-row reduction.

    Columns flagged in ``skip`` are ignored.  Returns ``(rank, pivot_rows)``
    where ``pivot_rows`` lists the pivot row of every nonzero reduced column.
    Values in ``data`` may be negative; ``p < 2**31``.
    """
    n_cols = len(indptr) - 1
    pivot_col = np.full(n_rows, -1, dtype=np.int64)
    # reduced pivot columns, stored normalised so the pivot entry is 1
    cap = max(16, 2 * len(indices))
    pool_idx = np.empty(cap, dtype=np.int64)
    pool_val = np.empty(cap, dtype=np.int64)
    col_start = np.zeros(n_cols + 1, dtype=np.int64)
    col_end = np.zeros(n_cols + 1, dtype=np.int64)
    used = 0
    acc = np.zeros(n_rows, dtype=np.int64)
    inheap = np.zeros(n_rows, dtype=np.bool_)
    heap = np.empty(16, dtype=np.int64)
    pivots = np.empty(min(n_rows, n_cols), dtype=np.int64)
    rank = 0
    for j in range(n_cols):
        if skip[j]:
            continue
        hs = 0
        for k in range(indptr[j], indptr[j + 1]):
            r = indices[k]
            v = data[k] % p
            if v == 0:
                continue
            acc[r] = (acc[r] + v) % p
            if not inheap[r]:
                if hs >= len(heap):
                    nh = np.empty(2 * len(heap), dtype=np.int64)
                    nh[:hs] = heap[:hs]
                    heap = nh
                hs = _heap_push(heap, hs, r)
                inheap[r] = True
        found = -1
        while hs > 0:
            r, hs = _heap_pop(heap, hs)
            inheap[r] = False
            a = acc[r]
            if a == 0:
                continue
            c = pivot_col[r]
            if c < 0:
                found = r
                break
            # acc -= a * column c (whose entry at r is 1)
            acc[r] = 0
            for k in range(col_start[c], col_end[c]):
                rr = pool_idx[k]
                if rr == r:
                    continue
                acc[rr] = (acc[rr] - a * pool_val[k]) % p
                if not inheap[rr]:
                    if hs >= len(heap):
                        nh = np.empty(2 * len(heap), dtype=np.int64)
                        nh[:hs] = heap[:hs]
                        heap = nh
                    hs = _heap_push(heap, hs, rr)
                    inheap[rr] = True
        if found < 0:
            continue
        # store the reduced column: entry at found plus everything left in heap
        inv = _inv_mod(acc[found], p)
        need = used + hs + 1
        if need > cap:
            while cap < need:
                cap *= 2
            ni = np.empty(cap, dtype=np.int64)
            nv = np.empty(cap, dtype=np.int64)
            ni[:used] = pool_idx[:used]
            nv[:used] = pool_val[:used]
            pool_idx = ni
            pool_val = nv
        col_start[j] = used
        pool_idx[used] = found
        pool_val[used] = 1
        used += 1
        acc[found] = 0
        for t in range(hs):
            rr = heap[t]
            inheap[rr] = False
            if acc[rr] != 0:
                pool_idx[used] = rr
                pool_val[used] = (acc[rr] * inv) % p
                used += 1
                acc[rr] = 0
        col_end[j] = used
        pivot_col[found] = j
        pivots[rank] = found
        rank += 1
    return rank, pivots[:rank]
