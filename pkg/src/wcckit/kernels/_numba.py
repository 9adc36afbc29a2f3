"""Compiled kernels. Every function here has a twin in ``_numpy.py``."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, nogil=True)
def _count_common(indices, a0, a1, b0, b1):
    # two-pointer intersection of two ascending neighbor runs
    i = a0
    j = b0
    c = 0
    while i < a1 and j < b1:
        u = indices[i]
        w = indices[j]
        if u == w:
            c += 1
            i += 1
            j += 1
        elif u < w:
            i += 1
        else:
            j += 1
    return c


@njit(cache=True, nogil=True)
def edge_support(indptr, indices):
    """Common-neighbour count for every CSR slot (x, adj[x][k])."""
    n = indptr.shape[0] - 1
    out = np.zeros(indices.shape[0], dtype=np.int64)
    for x in range(n):
        a0 = indptr[x]
        a1 = indptr[x + 1]
        for k in range(a0, a1):
            y = indices[k]
            if y < x:
                continue
            c = _count_common(indices, a0, a1, indptr[y], indptr[y + 1])
            out[k] = c
            # mirror into the (y, x) slot
            lo = indptr[y]
            hi = indptr[y + 1]
            while lo < hi:
                mid = (lo + hi) // 2
                if indices[mid] < x:
                    lo = mid + 1
                else:
                    hi = mid
            out[lo] = c
    return out


@njit(cache=True, nogil=True)
def community_counts(indptr, indices, labels, support, lo, hi):
    """For x in [lo, hi): triangles closed inside the community of x, and
    triangle partners of x outside it."""
    m = hi - lo
    t_in = np.zeros(m, dtype=np.int64)
    vt_out = np.zeros(m, dtype=np.int64)
    for x in range(lo, hi):
        lx = labels[x]
        a0 = indptr[x]
        a1 = indptr[x + 1]
        tri = 0
        out = 0
        for k in range(a0, a1):
            if support[k] == 0:
                continue
            y = indices[k]
            if labels[y] != lx:
                out += 1
                continue
            i = a0
            j = indptr[y]
            b1 = indptr[y + 1]
            while i < a1 and j < b1:
                u = indices[i]
                w = indices[j]
                if u == w:
                    if labels[u] == lx:
                        tri += 1
                    i += 1
                    j += 1
                elif u < w:
                    i += 1
                else:
                    j += 1
        t_in[x - lo] = tri // 2
        vt_out[x - lo] = out
    return t_in, vt_out


@njit(cache=True)
def _eval_assignment(a, n, pair_ptr, pair_y, pair_z, part_ptr, partners,
                     t_tot, vt_tot, sizes):
    for c in range(n):
        sizes[c] = 0
    for x in range(n):
        sizes[a[x]] += 1
    acc = 0.0
    for x in range(n):
        if t_tot[x] == 0:
            continue
        lx = a[x]
        ts = 0
        for k in range(pair_ptr[x], pair_ptr[x + 1]):
            if a[pair_y[k]] == lx and a[pair_z[k]] == lx:
                ts += 1
        if ts == 0:
            continue
        out = 0
        for k in range(part_ptr[x], part_ptr[x + 1]):
            if a[partners[k]] != lx:
                out += 1
        acc += (ts / t_tot[x]) * (vt_tot[x] / (sizes[lx] - 1 + out))
    return acc / n


@njit(cache=True)
def _next_rgs(a, b, n):
    # b[i] = max(a[0..i-1]); advance to the next restricted-growth string
    i = n - 1
    while i > 0 and a[i] > b[i]:
        i -= 1
    if i == 0:
        return False
    a[i] += 1
    m = b[i] if b[i] > a[i] else a[i]
    for j in range(i + 1, n):
        a[j] = 0
        b[j] = m
    return True


@njit(cache=True)
def best_partition(n, pair_ptr, pair_y, pair_z, part_ptr, partners,
                   t_tot, vt_tot, tol):
    """Exhaustive search over restricted-growth strings in lexicographic order.

    Returns the winning assignment and its value. Ties (within ``tol`` of the
    maximum) go to the fewest communities, then the lexicographically first.
    """
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    sizes = np.zeros(n, dtype=np.int64)
    best = -1.0
    while True:
        v = _eval_assignment(a, n, pair_ptr, pair_y, pair_z, part_ptr,
                             partners, t_tot, vt_tot, sizes)
        if v > best:
            best = v
        if not _next_rgs(a, b, n):
            break
    a[:] = 0
    b[:] = 0
    win = np.zeros(n, dtype=np.int64)
    win_k = n + 1
    win_v = best
    while True:
        v = _eval_assignment(a, n, pair_ptr, pair_y, pair_z, part_ptr,
                             partners, t_tot, vt_tot, sizes)
        if v >= best - tol:
            k = 0
            for i in range(n):
                if a[i] + 1 > k:
                    k = a[i] + 1
            if k < win_k:
                win_k = k
                win[:] = a
                win_v = v
        if not _next_rgs(a, b, n):
            break
    return win, win_v


@njit(cache=True)
def _pair_score(ra, rb, perm):
    n = ra.shape[0]
    s = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = ra[i] - ra[j]
            db = rb[perm[i]] - rb[perm[j]]
            if da * db > 0:
                s += 1
            elif da * db < 0:
                s -= 1
    return s


@njit(cache=True)
def permutation_extreme_count(ra, rb, s_obs):
    """Count permutations of ``rb`` whose concordance score is at least as
    extreme as ``s_obs``. Heap's algorithm, all n! orderings."""
    n = ra.shape[0]
    perm = np.arange(n)
    c = np.zeros(n, dtype=np.int64)
    target = abs(s_obs)
    hits = 0
    total = 1
    if abs(_pair_score(ra, rb, perm)) >= target:
        hits += 1
    i = 0
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                perm[0], perm[i] = perm[i], perm[0]
            else:
                perm[c[i]], perm[i] = perm[i], perm[c[i]]
            total += 1
            if abs(_pair_score(ra, rb, perm)) >= target:
                hits += 1
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1
    return hits, total
