"""Time the numba kernels against the numpy/scipy fallback.

    python benchmarks/bench_backends.py [--vertices 100000] [--edges 500000]

Each kernel is run once to warm up (numba compiles on first call), then timed
as the best of ``--repeat`` runs. Outputs of the two backends are checked for
equality before timings are printed.
"""

import argparse
import time

import numpy as np

from wcckit.fixtures import _triangle_tables, er_random, ring_of_cliques
from wcckit.kernels import get_backend


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vertices", type=int, default=100_000)
    ap.add_argument("--edges", type=int, default=500_000)
    ap.add_argument("--communities", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    n = args.vertices
    p = args.edges / (n * (n - 1) / 2)
    g = er_random(n, p, seed=args.seed)
    labels = np.random.default_rng(args.seed + 1).integers(0, args.communities, n)
    small = ring_of_cliques(3, 4)
    tables = _triangle_tables(small)
    rng = np.random.default_rng(args.seed + 2)
    xs, ys = rng.normal(size=9), rng.normal(size=9)
    iu, ju = np.triu_indices(9, 1)
    s_obs = int(np.sum(np.sign(xs[iu] - xs[ju]) * np.sign(ys[iu] - ys[ju])))

    nb, npy = get_backend("numba"), get_backend("numpy")
    support = nb.edge_support(g.indptr, g.indices)
    cases = [
        (f"edge_support  ({g.vertex_count} v, {g.edge_count} e)",
         lambda k: k.edge_support(g.indptr, g.indices)),
        (f"community_counts ({args.communities} communities)",
         lambda k: k.community_counts(g.indptr, g.indices, labels, support, 0, n)),
        ("best_partition (ring_of_cliques(3,4), Bell(12))",
         lambda k: k.best_partition(small.vertex_count, *tables, 1e-12)),
        ("permutation_extreme_count (9 items, 9! orderings)",
         lambda k: k.permutation_extreme_count(xs, ys, s_obs)),
    ]
    print(f"{'kernel':<52} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for name, call in cases:
        t_nb, out_nb = best_of(lambda: call(nb), args.repeat)
        t_np, out_np = best_of(lambda: call(npy), max(1, args.repeat // 3))
        if not same(out_nb, out_np):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<52} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
