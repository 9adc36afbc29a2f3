"""Graph families with known WCC behaviour, closed-form evaluators and a
brute-force optimum search for small graphs."""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .errors import CapabilityError, DomainError
from .graph import Graph
from .partition import Partition
from .wcc import wcc_partition

ORACLE_LIMIT = 12
TIE_TOL = 1e-12


def _need(cond, msg):
    if not cond:
        raise DomainError(msg)


def _clique_edges(vertices):
    return list(combinations(vertices, 2))


def clique(k):
    _need(k >= 1, "clique needs k >= 1")
    return Graph.from_edges(_clique_edges(range(k)), n=k)


def ring_of_cliques(m, k):
    """``m`` copies of K_k in a cycle; clique i's last vertex links to clique i+1's first."""
    _need(m >= 3 and k >= 2, "ring_of_cliques needs m >= 3 cliques of size k >= 2")
    edges = []
    for i in range(m):
        base = i * k
        edges += _clique_edges(range(base, base + k))
        edges.append((base + k - 1, ((i + 1) % m) * k))
    return Graph.from_edges(edges, n=m * k)


def bridged_cliques(r, s):
    """K_r on ``0..r-1`` and K_s on ``r..r+s-1`` joined by the edge ``(r-1, r)``."""
    _need(r >= 2 and s >= 2, "bridged_cliques needs r, s >= 2")
    edges = _clique_edges(range(r)) + _clique_edges(range(r, r + s)) + [(r - 1, r)]
    return Graph.from_edges(edges, n=r + s)


def shared_vertex_cliques(r, s):
    """K_r on ``0..r-1`` and K_s on ``{0} + r..r+s-2``; vertex 0 is shared."""
    _need(r >= 3 and s >= 3, "shared_vertex_cliques needs r, s >= 3")
    n = r + s - 1
    edges = _clique_edges(range(r)) + _clique_edges([0, *range(r, n)])
    return Graph.from_edges(edges, n=n)


def clique_satellite(r, d):
    """K_r plus vertex ``r`` adjacent to clique vertices ``0..d-1``."""
    _need(r >= 3, "clique_satellite needs r >= 3")
    _need(0 <= d <= r, "clique_satellite needs 0 <= d <= r")
    edges = _clique_edges(range(r)) + [(v, r) for v in range(d)]
    return Graph.from_edges(edges, n=r + 1)


def cycle(k):
    _need(k >= 3, "cycle needs k >= 3")
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)], n=k)


def er_random(n, p, seed=0):
    """G(n, p): draw the edge count, then that many distinct uniform pairs."""
    _need(n >= 0, "er_random needs n >= 0")
    _need(0.0 <= p <= 1.0, "er_random needs 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    m = int(rng.binomial(pairs, p)) if pairs else 0
    if m == 0:
        return Graph.from_edges(np.zeros((0, 2), dtype=np.int64), n=n)
    if m > pairs // 2:
        # dense: enumerate all pairs and subsample
        iu, ju = np.triu_indices(n, 1)
        pick = np.sort(rng.choice(pairs, size=m, replace=False))
        return Graph.from_edges(np.column_stack([iu[pick], ju[pick]]), n=n)
    keys = np.zeros(0, dtype=np.int64)
    while keys.shape[0] < m:
        need = m - keys.shape[0]
        u = rng.integers(0, n, size=need + need // 8 + 16)
        v = rng.integers(0, n, size=u.shape[0])
        ok = u != v
        lo = np.minimum(u[ok], v[ok])
        hi = np.maximum(u[ok], v[ok])
        fresh = np.setdiff1d(np.unique(lo * n + hi), keys)
        if fresh.shape[0] > need:
            fresh = np.sort(rng.choice(fresh, size=need, replace=False))
        keys = np.union1d(keys, fresh)
    return Graph.from_edges(np.column_stack([keys // n, keys % n]), n=n)


GENERATORS = {
    "clique": (clique, ("k",)),
    "ring_of_cliques": (ring_of_cliques, ("m", "k")),
    "bridged_cliques": (bridged_cliques, ("r", "s")),
    "shared_vertex_cliques": (shared_vertex_cliques, ("r", "s")),
    "clique_satellite": (clique_satellite, ("r", "d")),
    "cycle": (cycle, ("k",)),
    "er_random": (er_random, ("n", "p")),
}


def gen_fixture(kind, *params, seed=0):
    """Build fixture ``kind`` from positional ``params``; ``seed`` only affects er_random."""
    if kind not in GENERATORS:
        raise DomainError(f"unknown fixture {kind!r}; choose from {sorted(GENERATORS)}")
    fn, names = GENERATORS[kind]
    if len(params) != len(names):
        raise DomainError(f"{kind} takes {len(names)} parameters ({', '.join(names)})")
    if kind == "er_random":
        return fn(int(params[0]), float(params[1]), seed=seed)
    return fn(*(int(x) for x in params))


def natural_partition(kind, *params):
    """The intended community structure of a deterministic fixture."""
    if kind == "ring_of_cliques":
        m, k = map(int, params)
        return Partition(np.repeat(np.arange(m), k))
    if kind == "bridged_cliques":
        r, s = map(int, params)
        return Partition(np.repeat([0, 1], [r, s]))
    if kind == "shared_vertex_cliques":
        r, s = map(int, params)
        return Partition(np.repeat([0, 1], [r, s - 1]))
    if kind == "clique_satellite":
        r, _ = map(int, params)
        return Partition(np.repeat([0, 1], [r, 1]))
    g = gen_fixture(kind, *params)
    return Partition.whole(g.vertex_count)


@dataclass(frozen=True)
class Theorem1Params:
    r: int
    p: float
    d: float

    def __post_init__(self):
        _need(self.r >= 3, "r must be >= 3")
        _need(0.0 < self.p <= 1.0, "p must lie in (0, 1]")
        _need(0 <= self.d <= self.r, "d must lie in [0, r]")


def _theorem1_coeffs(r, p):
    a = 2 * (2 + p * r)
    b = p * p * (p + 1) * r * r - p * (3 * p * p + 3 * p + 4) * r + 2 * p ** 3 + 2 * p * p - 4
    c = -(p ** 3) * r ** 3 + 3 * p ** 3 * r * r + 2 * p * (1 - p * p) * r
    return a, b, c


def theorem1_margin(q):
    """Quadratic margin for attaching a satellite with ``d`` links to a
    community of size ``r`` and expected density ``p``.

    Positive margin means the merged community scores higher than keeping the
    satellite apart.
    """
    a, b, c = _theorem1_coeffs(q.r, q.p)
    margin = a * q.d * q.d + b * q.d + c
    return margin, margin > 0


def theorem1_threshold(r, p):
    """Largest root of the margin quadratic and its limit fraction ``d/r`` as r grows."""
    _need(r >= 3, "r must be >= 3")
    _need(0.0 < p <= 1.0, "p must lie in (0, 1]")
    a, b, c = _theorem1_coeffs(r, p)
    disc = b * b - 4 * a * c
    _need(disc >= 0, "margin quadratic has no real root")
    d2 = (-b + math.sqrt(disc)) / (2 * a)
    frac = p * (math.sqrt(p * p + 2 * p + 9) - (1 + p)) / 4
    return d2, frac


@dataclass(frozen=True)
class Theorem3Params:
    r: int
    s: int

    def __post_init__(self):
        _need(self.r >= self.s >= 4, "need r >= s >= 4")

    @property
    def n(self):
        return self.r + self.s - 1


def theorem3_values(q):
    """Partition WCC of two cliques sharing one vertex, three ways.

    Returns the values for: everything in one community; the shared vertex
    kept with the larger clique; the shared vertex on its own.
    """
    r, s, n = q.r, q.s, q.n
    p1 = (((r - 1) ** 2 + (s - 1) ** 2) / (n - 1) + 1) / n
    big = (r - 1) * (r - 2)
    p2 = ((r - 1) + big / (big + (s - 1) * (s - 2)) + (s - 3)) / n
    p3 = ((r - 3) + (s - 3)) / n
    return p1, p2, p3


def theorem3_partitions(r, s):
    """The three partitions of :func:`shared_vertex_cliques` scored by :func:`theorem3_values`."""
    n = r + s - 1
    whole = Partition.whole(n)
    with_t = Partition(np.repeat([0, 1], [r, s - 1]))
    apart = Partition(np.concatenate([[1], np.zeros(r - 1, dtype=np.int64),
                                      np.full(s - 1, 2, dtype=np.int64)]))
    return whole, with_t, apart


def _triangle_tables(g):
    n = g.vertex_count
    adj = [set(g.adj(v).tolist()) for v in range(n)]
    pair_ptr, pair_y, pair_z = [0], [], []
    part_ptr, partners = [0], []
    for x in range(n):
        nb = g.adj(x).tolist()
        for y, z in combinations(nb, 2):
            if z in adj[y]:
                pair_y.append(y)
                pair_z.append(z)
        pair_ptr.append(len(pair_y))
        sup = g.support[g.indptr[x]:g.indptr[x + 1]].tolist()
        partners += [y for y, c in zip(nb, sup) if c > 0]
        part_ptr.append(len(partners))
    t, vt = g.triangle_totals
    arrays = [np.asarray(v, dtype=np.int64) for v in (pair_ptr, pair_y, pair_z, part_ptr, partners)]
    return (*arrays, np.array(t), np.array(vt))


def exhaustive_best_partition(g, limit=ORACLE_LIMIT):
    """Maximum-WCC partition by enumerating every set partition.

    Ties go to the fewest communities, then the lexicographically smallest
    assignment. Refuses graphs with more than ``limit`` vertices.
    """
    n = g.vertex_count
    if n > limit:
        raise CapabilityError(
            f"exhaustive search over {n} vertices means Bell({n}) partitions; limit is {limit}"
        )
    if n == 0:
        p = Partition(np.zeros(0, dtype=np.int64))
        return p, 0.0
    tables = _triangle_tables(g)
    assign, _ = kernels.best_partition(n, *tables, TIE_TOL)
    p = Partition(np.asarray(assign, dtype=np.int64))
    return p, wcc_partition(g, p).wcc
