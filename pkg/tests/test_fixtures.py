import math

import numpy as np
import pytest
from oracles import edge_set, wcc_partition_brute

from wcckit import CapabilityError, DomainError, Partition
from wcckit.fixtures import (
    Theorem1Params,
    Theorem3Params,
    clique_satellite,
    er_random,
    exhaustive_best_partition,
    gen_fixture,
    natural_partition,
    theorem1_margin,
    theorem1_threshold,
    theorem3_partitions,
    theorem3_values,
)
from wcckit.graph import Graph
from wcckit.wcc import wcc_partition


class TestGenerators:
    @pytest.mark.parametrize("kind,params,n,m", [
        ("ring_of_cliques", (24, 5), 120, 264),
        ("bridged_cliques", (5, 5), 10, 21),
        ("shared_vertex_cliques", (5, 5), 9, 20),
        ("clique", (6,), 6, 15),
        ("cycle", (7,), 7, 7),
        ("clique_satellite", (6, 3), 7, 18),
    ])
    def test_sizes(self, kind, params, n, m):
        g = gen_fixture(kind, *params)
        assert (g.vertex_count, g.edge_count) == (n, m)

    def test_ring_links_close_no_triangle(self):
        g = gen_fixture("ring_of_cliques", 6, 4)
        t, _ = g.triangle_totals
        assert t.tolist() == [3] * 24

    def test_satellite_links_lowest_ids(self):
        g = clique_satellite(6, 3)
        assert g.adj(6).tolist() == [0, 1, 2]

    @pytest.mark.parametrize("kind,params", [
        ("shared_vertex_cliques", (2, 5)),
        ("ring_of_cliques", (2, 5)),
        ("cycle", (2,)),
        ("clique_satellite", (5, 6)),
        ("nope", ()),
        ("clique", (3, 3)),
    ])
    def test_invalid(self, kind, params):
        with pytest.raises(DomainError):
            gen_fixture(kind, *params)

    def test_er_reproducible(self):
        a = er_random(200, 0.05, seed=7)
        b = er_random(200, 0.05, seed=7)
        c = er_random(200, 0.05, seed=8)
        assert np.array_equal(a.indices, b.indices)
        assert not np.array_equal(a.indices, c.indices)

    def test_er_edge_count_plausible(self):
        g = er_random(2000, 0.01, seed=1)
        expected = 2000 * 1999 / 2 * 0.01
        assert abs(g.edge_count - expected) < 5 * math.sqrt(expected)

    def test_er_dense_branch(self):
        g = er_random(30, 0.9, seed=3)
        assert g.edge_count > 300

    def test_natural_partitions(self):
        assert natural_partition("ring_of_cliques", 3, 4).sizes.tolist() == [4, 4, 4]
        assert natural_partition("shared_vertex_cliques", 5, 4).sizes.tolist() == [5, 3]


class TestSatelliteMargin:
    def test_small_satellite_examples(self):
        assert theorem1_margin(Theorem1Params(6, 1.0, 3))[1] is True
        assert theorem1_margin(Theorem1Params(6, 1.0, 2))[1] is False

    def test_limit_fraction(self):
        _, frac = theorem1_threshold(10, 1.0)
        assert frac == pytest.approx((math.sqrt(3) - 1) / 2)

    def test_large_r_root(self):
        d2, frac = theorem1_threshold(10 ** 4, 1.0)
        assert abs(d2 / 1e4 - frac) < 0.005

    def test_d2_is_largest_root(self):
        from wcckit.fixtures import _theorem1_coeffs
        for r, p in [(10, 1.0), (50, 0.5), (200, 0.2)]:
            d2, _ = theorem1_threshold(r, p)
            a, b, c = _theorem1_coeffs(r, p)
            assert a * d2 * d2 + b * d2 + c == pytest.approx(0.0, abs=1e-9 * abs(c))
            assert a * (d2 + 1) ** 2 + b * (d2 + 1) + c > 0

    def test_fraction_increasing_in_p(self):
        fr = [theorem1_threshold(100, p)[1] for p in np.linspace(0.01, 1.0, 50)]
        assert all(b > a for a, b in zip(fr, fr[1:]))

    def test_r20_matches_exact_evaluation(self):
        for d in range(21):
            g = clique_satellite(20, d)
            merged = wcc_partition(g, Partition.whole(21)).wcc
            apart = wcc_partition(g, natural_partition("clique_satellite", 20, d)).wcc
            assert theorem1_margin(Theorem1Params(20, 1.0, d))[1] == (merged > apart)

    def test_invalid(self):
        with pytest.raises(DomainError):
            Theorem1Params(2, 1.0, 1)
        with pytest.raises(DomainError):
            Theorem1Params(5, 0.0, 1)
        with pytest.raises(DomainError):
            theorem1_threshold(5, 1.5)


class TestSharedVertexForms:
    def test_five_five_values(self):
        assert theorem3_values(Theorem3Params(5, 5)) == pytest.approx(
            (0.5556, 0.7222, 0.4444), abs=1e-4)

    def test_closed_forms_match_rational_oracle(self):
        for r, s in [(5, 5), (6, 4), (7, 5)]:
            g = gen_fixture("shared_vertex_cliques", r, s)
            for closed, p in zip(theorem3_values(Theorem3Params(r, s)), theorem3_partitions(r, s)):
                comms = [p.members(c).tolist() for c in range(p.community_count)]
                exact = wcc_partition_brute(g.vertex_count, edge_set(g), comms)
                assert closed == pytest.approx(float(exact), abs=1e-12)

    def test_invalid(self):
        with pytest.raises(DomainError):
            Theorem3Params(4, 5)
        with pytest.raises(DomainError):
            Theorem3Params(5, 3)


class TestOracle:
    def test_refuses_large(self):
        with pytest.raises(CapabilityError):
            exhaustive_best_partition(gen_fixture("cycle", 13))

    def test_clique_plus_triangle(self):
        edges = [(a, b) for a in range(5) for b in range(a + 1, 5)] + [(5, 6), (6, 7), (5, 7)]
        g = Graph.from_edges(edges)
        p, v = exhaustive_best_partition(g)
        assert v == 1.0
        assert p.assignment.tolist() == [0] * 5 + [1] * 3

    def test_shared_vertex_optimum(self):
        g = gen_fixture("shared_vertex_cliques", 5, 5)
        p, v = exhaustive_best_partition(g)
        assert v >= 0.7222 - 1e-4
        t_comm = p.assignment[0]
        a_side = set(p.assignment[1:5].tolist())
        b_side = set(p.assignment[5:9].tolist())
        assert (t_comm in a_side) != (t_comm in b_side)

    def test_tie_break_prefers_fewer_communities(self):
        # triangle-free: every partition scores 0, so the single community wins
        p, v = exhaustive_best_partition(gen_fixture("cycle", 5))
        assert v == 0.0 and p.community_count == 1

    def test_small_brute_agreement(self, rng):
        from conftest import random_graph
        from itertools import product
        for _ in range(5):
            g = random_graph(rng, 6, 0.6)
            p, v = exhaustive_best_partition(g)
            best = 0.0
            seen = set()
            for labels in product(range(6), repeat=6):
                key = tuple(sorted(tuple(i for i in range(6) if labels[i] == c)
                                   for c in set(labels)))
                if key in seen:
                    continue
                seen.add(key)
                val = float(wcc_partition_brute(6, edge_set(g), [list(c) for c in key]))
                best = max(best, val)
            assert v == pytest.approx(best, abs=1e-12)
