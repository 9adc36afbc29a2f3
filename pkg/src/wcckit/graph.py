"""Undirected simple graphs in CSR form, edge-list I/O and triangle primitives."""

import io
import os
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DomainError, ParseError


class Graph:
    """Immutable undirected simple graph.

    Vertices are dense ids ``0..n-1``; ``labels[i]`` is the external label of
    vertex ``i``. Adjacency is stored as CSR (``indptr``, ``indices``) with each
    neighbour run strictly ascending.
    """

    def __init__(self, indptr, indices, labels=None):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        n = indptr.shape[0] - 1
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} vertices")
        indptr.flags.writeable = False
        indices.flags.writeable = False
        self.indptr = indptr
        self.indices = indices
        self.labels = labels

    @classmethod
    def from_edges(cls, edges, n=None, labels=None):
        """Build a graph from an iterable or ``(m, 2)`` array of id pairs.

        Self-loops are dropped and duplicate or reversed pairs collapse to one
        undirected edge.
        """
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = len(labels) if labels is not None else (int(arr.max()) + 1 if arr.size else 0)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise DomainError(f"edge endpoint outside 0..{n - 1}")
        arr = arr[arr[:, 0] != arr[:, 1]]
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        key = np.unique(lo * max(n, 1) + hi)
        lo, hi = key // max(n, 1), key % max(n, 1)
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(indptr, cols, labels)

    @property
    def vertex_count(self):
        return self.indptr.shape[0] - 1

    @property
    def edge_count(self):
        return self.indices.shape[0] // 2

    @cached_property
    def index(self):
        """External label -> dense id."""
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def degrees(self):
        return np.diff(self.indptr)

    def adj(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self):
        """``(m, 2)`` array of edges with ``u < v``, sorted."""
        rows = np.repeat(np.arange(self.vertex_count), self.degrees)
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    @cached_property
    def support(self):
        """Common-neighbour count per CSR slot, i.e. triangles through each edge."""
        return kernels.edge_support(self.indptr, self.indices)

    @cached_property
    def triangle_totals(self):
        """``(t(x, V), vt(x, V))`` for every vertex, as two int64 arrays."""
        n = self.vertex_count
        rows = np.repeat(np.arange(n), self.degrees)
        sup = self.support
        t = np.bincount(rows, weights=sup, minlength=n).astype(np.int64) // 2
        vt = np.bincount(rows, weights=(sup > 0), minlength=n).astype(np.int64)
        t.flags.writeable = False
        vt.flags.writeable = False
        return t, vt

    def with_isolated(self, labels):
        """Copy of the graph with extra edgeless vertices appended."""
        new = [lab for lab in labels if lab not in self.index]
        if not new:
            return self
        indptr = np.concatenate([self.indptr, np.full(len(new), self.indptr[-1])])
        return Graph(indptr, self.indices, self.labels + tuple(new))

    def vertex_set(self, members):
        return VertexSet(members, self.vertex_count)

    def check_vertex(self, x):
        if not (0 <= int(x) < self.vertex_count):
            raise DomainError(f"vertex {x} not in 0..{self.vertex_count - 1}")
        return int(x)

    def labelled_edges(self):
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges()}

    def __eq__(self, other):
        # equality is on labels, so a graph re-read from its own edge list
        # compares equal even when first-seen order assigns different ids
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            set(self.labels) == set(other.labels)
            and self.edge_count == other.edge_count
            and self.labelled_edges() == other.labelled_edges()
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


class VertexSet:
    """Sorted set of vertex ids with a constant-time membership mask."""

    def __init__(self, members, n):
        if isinstance(members, np.ndarray):
            arr = np.unique(members.astype(np.int64))
        else:
            arr = np.unique(np.fromiter(members, dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= n):
            raise DomainError(f"vertex ids must lie in 0..{n - 1}")
        arr.flags.writeable = False
        self.members = arr
        self.n = n

    @cached_property
    def mask(self):
        m = np.zeros(self.n, dtype=bool)
        m[self.members] = True
        m.flags.writeable = False
        return m

    def complement(self):
        return VertexSet(np.flatnonzero(~self.mask), self.n)

    def __contains__(self, x):
        return 0 <= x < self.n and bool(self.mask[x])

    def __len__(self):
        return int(self.members.shape[0])

    def __iter__(self):
        return iter(self.members.tolist())

    def __repr__(self):
        return f"VertexSet({self.members.tolist()!r})"


def as_vertex_set(g, s):
    if isinstance(s, VertexSet):
        if s.n != g.vertex_count:
            raise DomainError("vertex set belongs to a graph of different size")
        return s
    return VertexSet(s, g.vertex_count)


def _open_lines(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb"), True, os.fspath(source)
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), True, None
    return source, False, getattr(source, "name", None)


def _text(raw):
    return raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw


def load_edge_list(source):
    """Read a whitespace-separated edge list into a :class:`Graph`.

    ``source`` is a path, a bytes object or an open (binary or text) stream.
    Lines starting with ``#`` are comments. Labels are mapped to dense ids in
    first-seen order.
    """
    stream, owned, name = _open_lines(source)
    index = {}
    us, vs = [], []
    try:
        for lineno, raw in enumerate(stream, 1):
            line = _text(raw).strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise ParseError(f"expected 2 vertex labels, got {len(toks)}", lineno, name)
            a, b = toks
            us.append(index.setdefault(a, len(index)))
            vs.append(index.setdefault(b, len(index)))
    finally:
        if owned:
            stream.close()
    return Graph.from_edges(np.column_stack([us, vs]) if us else np.zeros((0, 2)),
                            n=len(index), labels=list(index))


def write_edge_list(g, stream):
    """Write ``g`` as one ``u v`` line per edge using external labels."""
    lab = g.labels
    for u, v in g.edges().tolist():
        stream.write(f"{lab[u]} {lab[v]}\n")


def triangles_with(g, x, a):
    """Number of triangles through ``x`` whose other two corners lie in ``a``."""
    x = g.check_vertex(x)
    mask = as_vertex_set(g, a).mask
    nb = g.adj(x)
    nb = nb[mask[nb]]
    if nb.size < 2:
        return 0
    closed = 0
    for y in nb.tolist():
        closed += np.intersect1d(g.adj(y), nb, assume_unique=True).size
    return closed // 2


def triangle_partners(g, x, a):
    """Number of vertices of ``a`` sharing at least one triangle with ``x``.

    The third corner of the triangle may be anywhere in the graph.
    """
    x = g.check_vertex(x)
    mask = as_vertex_set(g, a).mask
    lo, hi = g.indptr[x], g.indptr[x + 1]
    nb = g.indices[lo:hi]
    return int(np.count_nonzero(mask[nb] & (g.support[lo:hi] > 0)))
