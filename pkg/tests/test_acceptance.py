"""Exit criteria. Each test is tagged with its criterion number; the terminal
summary prints one PASS/FAIL line per criterion."""

import math
import time

import numpy as np
import pytest
from conftest import random_graph
from oracles import edge_set, t_brute, vt_brute

from wcckit import Partition, kendall, nmi
from wcckit.compare import RankSeries
from wcckit.fixtures import (
    Theorem1Params,
    Theorem3Params,
    bridged_cliques,
    clique_satellite,
    er_random,
    exhaustive_best_partition,
    natural_partition,
    ring_of_cliques,
    shared_vertex_cliques,
    theorem1_margin,
    theorem1_threshold,
    theorem3_partitions,
    theorem3_values,
)
from wcckit.graph import Graph, triangle_partners, triangles_with
from wcckit.quality import modularity
from wcckit.wcc import vertex_values, wcc_community, wcc_partition, wcc_vertex

criterion = pytest.mark.criterion


def _best_time(fn, repeats=7):
    fn()
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


@criterion(1, "shared-vertex K5s score 0.556 / 0.722 / 0.444 (+-0.001), < 1 ms each")
def test_c01_shared_vertex_values():
    g = shared_vertex_cliques(5, 5)
    for p, want in zip(theorem3_partitions(5, 5), (0.556, 0.722, 0.444)):
        assert wcc_partition(g, p).wcc == pytest.approx(want, abs=1e-3)
        assert _best_time(lambda: wcc_partition(g, p)) < 1e-3


@criterion(2, "bridged K5s score 0.444 merged and 1.000 split (+-0.001)")
def test_c02_bridged_values():
    g = bridged_cliques(5, 5)
    assert wcc_partition(g, Partition.whole(10)).wcc == pytest.approx(0.444, abs=1e-3)
    split = natural_partition("bridged_cliques", 5, 5)
    assert wcc_partition(g, split).wcc == pytest.approx(1.0, abs=1e-3)


@criterion(3, "ring of 24 K5: modularity 0.8674 / 0.8712 (+-1e-4); WCC 1 per clique, < 1 merged")
def test_c03_resolution_limit():
    g = ring_of_cliques(24, 5)
    cliques = Partition(np.repeat(np.arange(24), 5))
    pairs = Partition(np.repeat(np.arange(12), 10))
    assert modularity(g, cliques) == pytest.approx(0.8674, abs=1e-4)
    assert modularity(g, pairs) == pytest.approx(0.8712, abs=1e-4)
    assert wcc_partition(g, cliques).wcc == 1.0
    assert wcc_partition(g, pairs).wcc < 1.0


def _sign(v, tol=1e-12):
    return 0 if abs(v) <= tol else (1 if v > 0 else -1)


@criterion(4, "d2/r -> (sqrt3-1)/2 within 0.005 at r=1e4; margin sign = exact WCC sign, r in 6..30")
def test_c04_satellite_threshold():
    d2, _ = theorem1_threshold(10 ** 4, 1.0)
    assert abs(d2 / 1e4 - (math.sqrt(3) - 1) / 2) < 0.005
    mismatches = []
    for r in range(6, 31):
        for d in range(r + 1):
            g = clique_satellite(r, d)
            diff = (wcc_partition(g, Partition.whole(r + 1)).wcc
                    - wcc_partition(g, natural_partition("clique_satellite", r, d)).wcc)
            margin, _ = theorem1_margin(Theorem1Params(r, 1.0, d))
            if _sign(margin) != _sign(diff):
                mismatches.append((r, d, margin, diff))
    assert mismatches == []


@criterion(5, "P3 <= P2 and (n >= 7) P1 <= P2 on r >= s in 4..30; closed forms = direct to 1e-9")
def test_c05_shared_vertex_ordering():
    for r in range(4, 31):
        for s in range(4, r + 1):
            q = Theorem3Params(r, s)
            p1, p2, p3 = theorem3_values(q)
            assert p3 <= p2
            if q.n >= 7:
                assert p1 <= p2
            if r <= 12:
                g = shared_vertex_cliques(r, s)
                direct = [wcc_partition(g, p).wcc for p in theorem3_partitions(r, s)]
                assert direct == pytest.approx([p1, p2, p3], abs=1e-9)


def _two_component_case(seed):
    rng = np.random.default_rng(seed)
    n1, n2 = (int(v) for v in rng.integers(3, 9, 2))
    nr = int(rng.integers(0, 7))
    s1 = np.arange(n1)
    s2 = np.arange(n1, n1 + n2)
    rest = np.arange(n1 + n2, n1 + n2 + nr)
    edges = []

    def block(a, b, p, same):
        for i, u in enumerate(a):
            for v in (a[i + 1:] if same else b):
                if rng.random() < p:
                    edges.append((u, v))

    block(s1, None, 0.5, True)
    block(s2, None, 0.5, True)
    block(rest, None, 0.5, True)
    block(s1, rest, 0.3, False)
    block(s2, rest, 0.3, False)
    for s in (s1, s2):
        edges += [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])]
    n = n1 + n2 + nr
    g = Graph.from_edges(edges, n=n)
    lab = np.zeros(n, dtype=np.int64)
    lab[s2] = 1
    lab[rest] = 2
    split = Partition.from_labels(lab.tolist())
    lab_m = np.where(lab == 1, 0, lab)
    merged = Partition.from_labels(lab_m.tolist())
    return g, split, merged


@criterion(6, "200 two-component communities: split strictly better; bridges leave WCC bit-exact")
def test_c06_disconnected_split_and_bridges():
    for seed in range(200):
        g, split, merged = _two_component_case(seed)
        assert wcc_partition(g, split).wcc > wcc_partition(g, merged).wcc, seed

    rng = np.random.default_rng(2024)
    for _ in range(200):
        sizes = rng.integers(3, 9, 3)
        offsets = np.concatenate([[0], np.cumsum(sizes)])
        n = int(offsets[-1])
        edges = []
        for k in range(3):
            vs = np.arange(offsets[k], offsets[k + 1])
            for i, u in enumerate(vs):
                for v in vs[i + 1:]:
                    if rng.random() < 0.6:
                        edges.append((u, v))
        g = Graph.from_edges(edges, n=n)
        a, b = rng.choice(3, 2, replace=False)
        u = int(rng.integers(offsets[a], offsets[a + 1]))
        v = int(rng.integers(offsets[b], offsets[b + 1]))
        g2 = Graph.from_edges(edges + [(u, v)], n=n)
        p = Partition.from_labels(rng.integers(0, 4, n).tolist())
        assert np.array_equal(vertex_values(g, p), vertex_values(g2, p))
        for x in range(n):
            s = p.members(p.assignment[x])
            assert wcc_vertex(g, x, s) == wcc_vertex(g2, x, s)


@criterion(7, "500 random graphs (n <= 12): range, zero/one characterisations, brute-force counts")
def test_c07_propositions():
    rng = np.random.default_rng(7)
    for _ in range(500):
        n = int(rng.integers(3, 13))
        g = random_graph(rng, n, rng.uniform(0.2, 0.95))
        edges = edge_set(g)
        p = Partition.from_labels(rng.integers(0, int(rng.integers(1, 4)), n).tolist())
        for x in range(n):
            s = p.members(p.assignment[x]).tolist()
            outside = [v for v in range(n) if v not in s]
            w = wcc_vertex(g, x, s)
            t_s = t_brute(n, edges, x, s)
            assert 0.0 <= w <= 1.0
            assert (w == 0.0) == (t_s == 0)
            one = vt_brute(n, edges, x, outside) == 0 and vt_brute(n, edges, x, s) == len(s) - 1 >= 2
            assert (w == 1.0) == one
            assert triangles_with(g, x, s) == t_s
            assert triangle_partners(g, x, s) == vt_brute(n, edges, x, s)
            assert triangles_with(g, x, range(n)) == t_brute(n, edges, x, range(n))
            assert triangle_partners(g, x, outside) == vt_brute(n, edges, x, outside)
        for c in range(p.community_count):
            s = p.members(c).tolist()
            outside = [v for v in range(n) if v not in s]
            is_clique = len(s) >= 3 and all(
                frozenset((a, b)) in edges for i, a in enumerate(s) for b in s[i + 1:])
            isolated = all(vt_brute(n, edges, x, outside) == 0 for x in s)
            assert (wcc_community(g, s) == 1.0) == (is_clique and isolated)


@criterion(8, "exhaustive optimum of ring_of_cliques(3,4) and bridged K4s is per-clique, WCC 1, < 60 s")
def test_c08_exhaustive_oracle():
    t0 = time.perf_counter()
    for g, want in [(ring_of_cliques(3, 4), natural_partition("ring_of_cliques", 3, 4)),
                    (bridged_cliques(4, 4), natural_partition("bridged_cliques", 4, 4))]:
        p, v = exhaustive_best_partition(g)
        assert v == 1.0
        assert nmi(p, want) == pytest.approx(1.0)
        assert p.community_count == want.community_count
    assert time.perf_counter() - t0 < 60


@criterion(9, "NMI identical = 1, singletons vs whole = 0; reversed 5-item ranking tau -1 significant")
def test_c09_compare_sanity():
    a = Partition([0, 0, 1, 1, 2, 2])
    assert nmi(a, Partition.from_labels([5, 5, 3, 3, 4, 4])) == pytest.approx(1.0)
    assert nmi(Partition.singletons(6), Partition.whole(6)) == 0.0
    labels = [f"alg{i}" for i in range(5)]
    res = kendall(RankSeries(labels, [1, 2, 3, 4, 5]), RankSeries(labels, [5, 4, 3, 2, 1]))
    assert res.tau == -1.0 and res.significant and res.method == "exact"


@criterion(10, "100k vertices / ~500k edges, 1000 communities scored < 60 s; identical across threads")
def test_c10_performance():
    t0 = time.perf_counter()
    g = er_random(100_000, 1e-4, seed=10)
    p = Partition(np.random.default_rng(11).integers(0, 1000, g.vertex_count))
    single = wcc_partition(g, p, threads=1)
    elapsed = time.perf_counter() - t0
    assert 490_000 <= g.edge_count <= 510_000
    assert elapsed < 60
    for threads in (2, 4):
        assert wcc_partition(g, p, threads=threads) == single
