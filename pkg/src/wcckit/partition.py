"""Partitions of a graph's vertex set and the partition file format."""

from functools import cached_property

import numpy as np

from .errors import ParseError, ValidationError
from .graph import VertexSet, _open_lines, _text


def _label_order(labels):
    try:
        return sorted(labels, key=int)
    except ValueError:
        return sorted(labels)


class Partition:
    """Disjoint cover of ``0..n-1`` by communities ``0..k-1``.

    ``assignment[v]`` is the community index of vertex ``v``; ``names[c]`` is the
    external label of community ``c``. Community indices follow the ascending
    (numeric when possible) order of the external labels.
    """

    def __init__(self, assignment, names=None):
        a = np.ascontiguousarray(assignment, dtype=np.int64)
        if a.ndim != 1:
            raise ValidationError("assignment must be one-dimensional")
        k = int(a.max()) + 1 if a.size else 0
        if a.size and a.min() < 0:
            raise ValidationError("negative community index")
        sizes = np.bincount(a, minlength=k)
        empty = np.flatnonzero(sizes == 0)
        if empty.size:
            raise ValidationError("empty communities", empty.tolist())
        if names is None:
            names = [str(c) for c in range(k)]
        names = tuple(str(s) for s in names)
        if len(names) != k:
            raise ValidationError(f"{len(names)} names for {k} communities")
        a.flags.writeable = False
        sizes.flags.writeable = False
        self.assignment = a
        self.names = names
        self.sizes = sizes

    @classmethod
    def from_labels(cls, values):
        """Build from one hashable community label per vertex."""
        values = [str(v) for v in values]
        order = _label_order(set(values))
        pos = {lab: i for i, lab in enumerate(order)}
        return cls([pos[v] for v in values], order)

    @classmethod
    def from_communities(cls, communities, n):
        """Build from an iterable of vertex-id collections covering ``0..n-1``."""
        a = np.full(n, -1, dtype=np.int64)
        clash = []
        for c, members in enumerate(communities):
            for v in members:
                if not 0 <= v < n:
                    raise ValidationError("unknown vertices", [v])
                if a[v] != -1:
                    clash.append(v)
                a[v] = c
        if clash:
            raise ValidationError("vertices in more than one community", sorted(set(clash)))
        missing = np.flatnonzero(a < 0)
        if missing.size:
            raise ValidationError("vertices not covered", missing.tolist())
        return cls(a)

    @classmethod
    def whole(cls, n):
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def singletons(cls, n):
        return cls(np.arange(n))

    @property
    def vertex_count(self):
        return self.assignment.shape[0]

    @property
    def community_count(self):
        return self.sizes.shape[0]

    @cached_property
    def _order(self):
        order = np.argsort(self.assignment, kind="stable")
        bounds = np.zeros(self.community_count + 1, dtype=np.int64)
        np.cumsum(self.sizes, out=bounds[1:])
        return order, bounds

    def members(self, c):
        order, bounds = self._order
        return order[bounds[c]:bounds[c + 1]]

    def community(self, c):
        return VertexSet(self.members(c), self.vertex_count)

    @property
    def communities(self):
        return [self.community(c) for c in range(self.community_count)]

    def check_graph(self, g):
        if self.vertex_count != g.vertex_count:
            raise ValidationError(
                f"partition covers {self.vertex_count} vertices, graph has {g.vertex_count}"
            )

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment) and self.names == other.names

    __hash__ = None

    def __repr__(self):
        return f"Partition(vertices={self.vertex_count}, communities={self.community_count})"


def read_assignment(source):
    """Parse ``vertex<TAB>community`` lines into an ordered ``{vertex: community}``."""
    stream, owned, name = _open_lines(source)
    out = {}
    dupes = []
    try:
        for lineno, raw in enumerate(stream, 1):
            line = _text(raw).strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise ParseError(
                    f"expected 'vertex<TAB>community', got {len(toks)} fields", lineno, name
                )
            v, c = toks
            if v in out:
                dupes.append(v)
            out[v] = c
    finally:
        if owned:
            stream.close()
    if dupes:
        raise ValidationError("vertices listed more than once", dupes)
    return out


def read_partition(source, g, add_isolated=False):
    """Read a partition file against ``g``.

    Returns ``(graph, partition)``. With ``add_isolated`` any vertex label absent
    from the graph becomes a new edgeless vertex; otherwise it is an error.
    """
    assign = read_assignment(source)
    unknown = [v for v in assign if v not in g.index]
    if unknown:
        if not add_isolated:
            raise ValidationError("partition references vertices not in the graph", unknown)
        g = g.with_isolated(unknown)
    missing = [lab for lab in g.labels if lab not in assign]
    if missing:
        raise ValidationError("graph vertices missing from partition", missing)
    return g, Partition.from_labels([assign[lab] for lab in g.labels])


def write_partition(g, p, stream):
    for v in range(g.vertex_count):
        stream.write(f"{g.labels[v]}\t{p.names[p.assignment[v]]}\n")
