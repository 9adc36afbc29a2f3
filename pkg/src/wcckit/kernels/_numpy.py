"""Vectorised numpy/scipy versions of the compiled kernels.

Same signatures and results as ``_numba.py``; used when numba is unavailable
or when ``WCCKIT_BACKEND=numpy``.
"""

from itertools import islice, permutations

import numpy as np
import scipy.sparse as sp

NAME = "numpy"


def _adjacency(indptr, indices, n):
    data = np.ones(indices.shape[0], dtype=np.int64)
    return sp.csr_matrix((data, indices, indptr), shape=(n, n))


def edge_support(indptr, indices):
    n = indptr.shape[0] - 1
    if indices.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    a = _adjacency(indptr, indices, n)
    # adding `a` keeps every edge slot present even when the count is zero
    m = (a @ a).multiply(a).tocsr() + a
    m.sort_indices()
    return np.asarray(m.data, dtype=np.int64) - 1


def community_counts(indptr, indices, labels, support, lo, hi):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    same = labels[rows] == labels[indices]
    keep = same & (support > 0)
    a_in = sp.csr_matrix(
        (np.ones(int(keep.sum()), dtype=np.int64), (rows[keep], indices[keep])),
        shape=(n, n),
    )
    block = a_in[lo:hi]
    closed = np.asarray((block @ a_in).multiply(block).sum(axis=1)).ravel()
    t_in = closed.astype(np.int64) // 2

    outside = (~same) & (support > 0)
    counts = np.bincount(rows[outside], minlength=n).astype(np.int64)
    return t_in, counts[lo:hi]


def _all_rgs(n):
    # lexicographic order is preserved by expanding each prefix in place
    a = np.zeros((1, 1), dtype=np.int8)
    mx = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        reps = (mx + 2).astype(np.int64)
        parent = np.repeat(np.arange(a.shape[0]), reps)
        starts = np.cumsum(reps) - reps
        child = (np.arange(parent.shape[0]) - np.repeat(starts, reps)).astype(np.int8)
        a = np.concatenate([a[parent], child[:, None]], axis=1)
        mx = np.maximum(mx[parent], child)
    return a


def _eval_block(a, n, pair_ptr, pair_y, pair_z, part_ptr, partners, t_tot, vt_tot):
    acc = np.zeros(a.shape[0])
    for x in range(n):
        if t_tot[x] == 0:
            continue
        same = a == a[:, x:x + 1]
        ts = np.zeros(a.shape[0], dtype=np.int64)
        for k in range(pair_ptr[x], pair_ptr[x + 1]):
            ts += same[:, pair_y[k]] & same[:, pair_z[k]]
        size = same.sum(axis=1)
        cols = partners[part_ptr[x]:part_ptr[x + 1]]
        out = (~same[:, cols]).sum(axis=1)
        w = (ts / t_tot[x]) * (vt_tot[x] / (size - 1 + out))
        acc += np.where(ts > 0, w, 0.0)
    return acc / n


def best_partition(n, pair_ptr, pair_y, pair_z, part_ptr, partners, t_tot, vt_tot, tol):
    rgs = _all_rgs(n)
    vals = np.empty(rgs.shape[0])
    step = 1 << 18
    for s in range(0, rgs.shape[0], step):
        vals[s:s + step] = _eval_block(
            rgs[s:s + step], n, pair_ptr, pair_y, pair_z, part_ptr, partners, t_tot, vt_tot
        )
    best = vals.max()
    cand = np.flatnonzero(vals >= best - tol)
    k = rgs[cand].max(axis=1).astype(np.int64) + 1
    pick = cand[np.argmin(k)]
    return rgs[pick].astype(np.int64), float(vals[pick])


def permutation_extreme_count(ra, rb, s_obs):
    n = ra.shape[0]
    iu, ju = np.triu_indices(n, 1)
    sa = np.sign(ra[iu] - ra[ju])
    target = abs(s_obs)
    hits = 0
    total = 0
    perms = permutations(range(n))
    while True:
        chunk = np.array(list(islice(perms, 200_000)), dtype=np.int64)
        if chunk.size == 0:
            break
        pb = rb[chunk]
        s = (sa * np.sign(pb[:, iu] - pb[:, ju])).sum(axis=1)
        hits += int((np.abs(s) >= target).sum())
        total += chunk.shape[0]
    return hits, total
