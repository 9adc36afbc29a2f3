"""Weighted Community Clustering at vertex, community and partition level."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError
from .graph import as_vertex_set, triangles_with


def _seq_sum(values):
    # left-to-right accumulation; np.sum would switch to pairwise summation
    return float(np.cumsum(values)[-1]) if len(values) else 0.0


def community_counts(g, labels, threads=1, lo=0, hi=None):
    """Per-vertex ``(t(x, C(x)), vt(x, V \\ C(x)))`` for the labelling ``labels``.

    The vertex range is split into ``threads`` contiguous chunks; results do not
    depend on the split.
    """
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    hi = g.vertex_count if hi is None else hi
    sup = g.support
    if threads <= 1 or hi - lo < 2 * threads:
        return kernels.community_counts(g.indptr, g.indices, labels, sup, lo, hi)
    cuts = np.linspace(lo, hi, threads + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(
            lambda ab: kernels.community_counts(g.indptr, g.indices, labels, sup, ab[0], ab[1]),
            zip(cuts[:-1].tolist(), cuts[1:].tolist()),
        ))
    return (np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))


def _combine(t_in, t_tot, vt_tot, others, vt_out):
    # same operation order as wcc_vertex so both paths agree bit for bit
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (t_in / t_tot) * (vt_tot / (others + vt_out))
    return np.where(t_tot > 0, w, 0.0)


def wcc_vertex(g, x, s):
    """Cohesion of vertex ``x`` with its community ``s``, in ``[0, 1]``."""
    x = g.check_vertex(x)
    s = as_vertex_set(g, s)
    if x not in s:
        raise DomainError(f"vertex {x} is not a member of the community")
    t_tot, vt_tot = g.triangle_totals
    t = int(t_tot[x])
    if t == 0:
        return 0.0
    lo, hi = g.indptr[x], g.indptr[x + 1]
    outside = ~s.mask[g.indices[lo:hi]] & (g.support[lo:hi] > 0)
    vt_out = int(np.count_nonzero(outside))
    t_in = triangles_with(g, x, s)
    return (t_in / t) * (int(vt_tot[x]) / (len(s) - 1 + vt_out))


def vertex_values(g, p, threads=1):
    """WCC(x, C(x)) for every vertex under partition ``p``."""
    p.check_graph(g)
    t_in, vt_out = community_counts(g, p.assignment, threads)
    t_tot, vt_tot = g.triangle_totals
    others = p.sizes[p.assignment] - 1
    return _combine(t_in, t_tot, vt_tot, others, vt_out)


def wcc_community(g, s):
    """Mean vertex WCC over community ``s``."""
    s = as_vertex_set(g, s)
    if len(s) == 0:
        raise DomainError("community must be non-empty")
    members = s.members
    lo, hi = int(members[0]), int(members[-1]) + 1
    t_in, vt_out = community_counts(g, s.mask.astype(np.int64), 1, lo, hi)
    t_tot, vt_tot = g.triangle_totals
    idx = members - lo
    w = _combine(t_in[idx], t_tot[members], vt_tot[members], len(s) - 1, vt_out[idx])
    return _seq_sum(w) / len(s)


@dataclass
class CommunityScore:
    id: str
    size: int
    wcc: float
    conductance: float | None = None


@dataclass
class ScoreReport:
    """Result of scoring one partition."""

    wcc: float
    communities: list = field(default_factory=list)
    modularity: float | None = None

    def to_dict(self):
        out = {"wcc": self.wcc, "communities": []}
        for c in self.communities:
            row = {"id": c.id, "size": c.size, "wcc": c.wcc}
            if c.conductance is not None:
                row["conductance"] = c.conductance
            out["communities"].append(row)
        if self.modularity is not None:
            out["modularity"] = self.modularity
        return out


def community_values(g, p, threads=1):
    """Per-community WCC, summing members in ascending vertex id."""
    w = vertex_values(g, p, threads)
    # bincount accumulates in input order, i.e. ascending vertex id per bin
    sums = np.bincount(p.assignment, weights=w, minlength=p.community_count)
    return sums / p.sizes


def wcc_partition(g, p, threads=1):
    """Size-weighted mean community WCC of partition ``p``."""
    vals = community_values(g, p, threads)
    total = 0.0
    for size, v in zip(p.sizes.tolist(), vals.tolist()):
        total += size * v
    n = g.vertex_count
    comms = [CommunityScore(p.names[c], int(p.sizes[c]), float(vals[c]))
             for c in range(p.community_count)]
    return ScoreReport(total / n if n else 0.0, comms)
