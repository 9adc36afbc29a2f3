"""Modularity, conductance, per-community statistics and the percentile report."""

import csv
import math
from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DomainError
from .graph import as_vertex_set
from .wcc import community_counts, community_values, wcc_partition

CONDUCTANCE_VARIANTS = ("standard", "paper-literal")


def _slot_rows(g):
    return np.repeat(np.arange(g.vertex_count), g.degrees)


def modularity(g, p):
    """Newman-Girvan modularity of partition ``p``."""
    m = g.edge_count
    if m == 0:
        raise DomainError("modularity is undefined on a graph without edges")
    p.check_graph(g)
    return float(sum(modularity_terms(g, p).tolist()))


def modularity_terms(g, p):
    """Per-community contribution ``m_c/m - (d_c/2m)^2``."""
    m = g.edge_count
    if m == 0:
        raise DomainError("modularity is undefined on a graph without edges")
    a = p.assignment
    rows = _slot_rows(g)
    inside = a[rows] == a[g.indices]
    m_c = np.bincount(a[rows[inside]], minlength=p.community_count) // 2
    d_c = np.bincount(a, weights=g.degrees, minlength=p.community_count)
    return m_c / m - (d_c / (2 * m)) ** 2


def _conductance_value(cut, m_int, variant):
    if variant == "standard":
        denom = 2 * m_int + cut
        return cut / denom if denom else 0.0
    if variant == "paper-literal":
        if m_int == 0:
            return math.inf if cut else 0.0
        return cut / m_int
    raise ValueError(f"conductance variant must be one of {CONDUCTANCE_VARIANTS}")


def conductance(g, s, variant="standard"):
    """Edge cut of ``s`` relative to its volume.

    ``standard`` is ``cut / (2*m_int + cut)``, bounded in [0, 1];
    ``paper-literal`` is ``cut / m_int``. A set with no incident edges scores 0.
    """
    s = as_vertex_set(g, s)
    if len(s) == 0:
        raise DomainError("conductance of an empty set")
    mask = s.mask
    cut = 0
    internal_slots = 0
    for x in s.members.tolist():
        nb = g.adj(x)
        k = int(np.count_nonzero(mask[nb]))
        internal_slots += k
        cut += nb.shape[0] - k
    return _conductance_value(cut, internal_slots // 2, variant)


def _cut_and_internal(g, p):
    a = p.assignment
    rows = _slot_rows(g)
    inside = a[rows] == a[g.indices]
    internal = np.bincount(a[rows[inside]], minlength=p.community_count) // 2
    cut = np.bincount(a[rows[~inside]], minlength=p.community_count)
    return cut, internal


def community_conductances(g, p, variant="standard"):
    cut, internal = _cut_and_internal(g, p)
    return [_conductance_value(int(c), int(i), variant) for c, i in zip(cut, internal)]


def evaluate(g, p, threads=1, variant="standard"):
    """Score report with WCC, modularity and per-community conductance."""
    report = wcc_partition(g, p, threads)
    if g.edge_count:
        report.modularity = modularity(g, p)
    for c, value in zip(report.communities, community_conductances(g, p, variant)):
        c.conductance = value
    return report


def induced_subgraph(g, members):
    """CSR arrays of the subgraph induced by sorted ``members``, locally relabelled."""
    members = np.asarray(members, dtype=np.int64)
    deg = g.degrees[members]
    starts = g.indptr[members]
    slot = np.repeat(starts - np.cumsum(deg) + deg, deg) + np.arange(int(deg.sum()))
    nbr = g.indices[slot]
    owner = np.repeat(np.arange(members.shape[0]), deg)
    pos = np.searchsorted(members, nbr)
    pos[pos == members.shape[0]] = 0
    keep = members[pos] == nbr
    indptr = np.zeros(members.shape[0] + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner[keep], minlength=members.shape[0]), out=indptr[1:])
    return indptr, pos[keep]


def find_bridges(indptr, indices):
    """Bridges of an undirected CSR graph, as ``(u, v)`` pairs with ``u < v``."""
    n = indptr.shape[0] - 1
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    out = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        # frames: (vertex, parent, next slot)
        stack = [(root, -1, int(indptr[root]))]
        while stack:
            v, parent, k = stack[-1]
            if k < indptr[v + 1]:
                stack[-1] = (v, parent, k + 1)
                w = int(indices[k])
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, int(indptr[w])))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.append((min(v, parent), max(v, parent)))
    return sorted(out)


def diameter(indptr, indices):
    """Longest shortest path over reachable pairs, and whether all pairs are reachable."""
    n = indptr.shape[0] - 1
    if n <= 1:
        return 0, True
    adj = csr_matrix((np.ones(indices.shape[0]), indices, indptr), shape=(n, n))
    best = 0
    connected = True
    step = max(1, 4_000_000 // n)
    for s in range(0, n, step):
        d = shortest_path(adj, method="D", unweighted=True, indices=np.arange(s, min(n, s + step)))
        finite = np.isfinite(d)
        if not finite.all():
            connected = False
        if finite.any():
            best = max(best, int(d[finite].max()))
    return best, connected


@dataclass
class StatRecord:
    community: str
    size: int
    wcc: float
    triangle_density: float
    avg_inverse_edge_cut: float
    avg_edge_density: float
    normalized_diameter: float
    bridge_ratio: float
    conductance: float
    modularity: float
    diameter: int = 0
    disconnected: bool = False
    isolated: bool = False
    source: str = ""


MEAN_FIELDS = (
    "size", "wcc", "triangle_density", "avg_inverse_edge_cut", "avg_edge_density",
    "normalized_diameter", "bridge_ratio", "conductance", "modularity",
)


def _structure(g, members):
    indptr, indices = induced_subgraph(g, members)
    m_int = indices.shape[0] // 2
    size = members.shape[0]
    bridges = find_bridges(indptr, indices) if m_int else []
    diam, connected = diameter(indptr, indices)
    ndiam = diam / math.log(size) if size >= 3 else 0.0
    return {
        "bridge_ratio": len(bridges) / m_int if m_int else 0.0,
        "diameter": diam,
        "normalized_diameter": ndiam,
        "disconnected": not connected,
    }


def partition_stats(g, p, variant="standard", threads=1, source=""):
    """One :class:`StatRecord` per community of ``p``, in community order."""
    p.check_graph(g)
    a = p.assignment
    rows = _slot_rows(g)
    inside = a[rows] == a[g.indices]
    internal_deg = np.bincount(rows[inside], minlength=g.vertex_count)
    deg = g.degrees
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_cut = np.where(deg > 0, internal_deg / deg, 0.0)
        others = p.sizes[a] - 1
        dens = np.where(others > 0, internal_deg / others, 0.0)
    k = p.community_count
    inv_cut_c = np.bincount(a, weights=inv_cut, minlength=k) / p.sizes
    dens_c = np.bincount(a, weights=dens, minlength=k) / p.sizes
    t_in, _ = community_counts(g, a, threads)
    tri_c = np.bincount(a, weights=t_in, minlength=k) // 3
    wcc_c = community_values(g, p, threads)
    cut, internal = _cut_and_internal(g, p)
    mod_c = modularity_terms(g, p) if g.edge_count else np.zeros(k)

    out = []
    for c in range(k):
        size = int(p.sizes[c])
        possible = math.comb(size, 3)
        struct = _structure(g, p.members(c))
        out.append(StatRecord(
            community=p.names[c],
            size=size,
            wcc=float(wcc_c[c]),
            triangle_density=float(tri_c[c]) / possible if possible else 0.0,
            avg_inverse_edge_cut=float(inv_cut_c[c]),
            avg_edge_density=float(dens_c[c]),
            conductance=_conductance_value(int(cut[c]), int(internal[c]), variant),
            modularity=float(mod_c[c]),
            isolated=bool(cut[c] == 0 and internal[c] == 0),
            source=source,
            **struct,
        ))
    return out


def community_stats(g, s, variant="standard"):
    """Statistics of a single community ``s``; the rest of the graph is one block."""
    from .partition import Partition

    s = as_vertex_set(g, s)
    if len(s) == 0:
        raise DomainError("community must be non-empty")
    p = Partition((~s.mask).astype(np.int64))
    return partition_stats(g, p, variant)[0]


@dataclass
class PercentileRow:
    group: int
    count: int
    means: dict


@dataclass
class PercentileReport:
    rows: list

    def write_csv(self, stream):
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["group", "count", *MEAN_FIELDS])
        for r in self.rows:
            w.writerow([r.group, r.count, *(repr(float(r.means[f])) for f in MEAN_FIELDS)])


def percentile_report(records, groups=20):
    """Pool communities of size >= 3, sort by WCC descending and cut into
    ``groups`` equal-count groups, reporting the mean of every statistic."""
    pool = [r for r in records if r.size > 2]
    if len(pool) < groups:
        raise DomainError(
            f"{len(pool)} communities of size >= 3 cannot fill {groups} groups; "
            "request fewer groups or supply more partitions"
        )
    # stable sort keeps the input (ascending id) order among ties
    pool.sort(key=lambda r: (-r.wcc, -r.size))
    base, extra = divmod(len(pool), groups)
    rows = []
    start = 0
    for gi in range(groups):
        cnt = base + (1 if gi < extra else 0)
        chunk = pool[start:start + cnt]
        start += cnt
        means = {f: sum(getattr(r, f) for r in chunk) / cnt for f in MEAN_FIELDS}
        rows.append(PercentileRow(gi + 1, cnt, means))
    return PercentileReport(rows)


def write_stats_csv(records, stream):
    names = [f.name for f in fields(StatRecord)]
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(names)
    for r in records:
        d = asdict(r)
        w.writerow([repr(v) if isinstance(v, float) else v for v in (d[k] for k in names)])
