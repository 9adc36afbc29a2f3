"""Agreement between partitions (NMI) and between rankings (Kendall tau-b)."""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ParseError
from .graph import _open_lines, _text

ALPHA = 0.05
EXACT_LIMIT = 10


def contingency(a, b):
    """Contingency table ``n_ij`` of two label sequences over the same items."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DomainError("label sequences have different lengths")
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    table = np.zeros((ia.max() + 1 if ia.size else 0, ib.max() + 1 if ib.size else 0),
                     dtype=np.int64)
    np.add.at(table, (ia, ib), 1)
    return table


def _xlogx_ratio(counts, n):
    counts = counts[counts > 0]
    return float(np.sum(counts * np.log(counts / n)))


def nmi(a, b):
    """Normalised mutual information ``2 I(A;B) / (H(A) + H(B))``.

    ``a`` and ``b`` are either :class:`~wcckit.partition.Partition` objects over
    the same vertices or ``{item: community}`` mappings over the same items.
    """
    if isinstance(a, dict) or isinstance(b, dict):
        if not (isinstance(a, dict) and isinstance(b, dict)):
            raise DomainError("cannot compare a mapping with a partition")
        if a.keys() != b.keys():
            diff = sorted(set(a) ^ set(b))
            raise DomainError(f"vertex sets differ ({len(diff)} vertices, e.g. {diff[:5]})")
        keys = list(a)
        la = [a[k] for k in keys]
        lb = [b[k] for k in keys]
    else:
        if a.vertex_count != b.vertex_count:
            raise DomainError("partitions cover different vertex sets")
        la, lb = a.assignment, b.assignment
    table = contingency(la, lb)
    n = int(table.sum())
    if n == 0:
        raise DomainError("nmi of empty partitions")
    ni = table.sum(axis=1)
    nj = table.sum(axis=0)
    denom = _xlogx_ratio(ni, n) + _xlogx_ratio(nj, n)
    if denom == 0.0:
        return 1.0
    ii, jj = np.nonzero(table)
    nij = table[ii, jj]
    num = -2.0 * float(np.sum(nij * np.log(nij * n / (ni[ii] * nj[jj]))))
    return min(1.0, max(0.0, num / denom))


@dataclass
class RankSeries:
    labels: list
    scores: list

    def __post_init__(self):
        if len(self.labels) != len(self.scores):
            raise DomainError("labels and scores differ in length")
        if len(set(self.labels)) != len(self.labels):
            seen, dup = set(), []
            for lab in self.labels:
                if lab in seen:
                    dup.append(lab)
                seen.add(lab)
            raise DomainError(f"duplicate labels: {dup}")

    def as_dict(self):
        return dict(zip(self.labels, self.scores))


def read_rank_series(source):
    """Read ``label,score`` rows. A first row whose score is not numeric is a header."""
    stream, owned, name = _open_lines(source)
    try:
        text = "".join(_text(line) for line in stream)
    finally:
        if owned:
            stream.close()
    labels, scores = [], []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or (len(row) == 1 and not row[0].strip()) or row[0].startswith("#"):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 'label,score', got {len(row)} fields", lineno, name)
        try:
            score = float(row[1])
        except ValueError:
            if not labels and lineno == 1:
                continue
            raise ParseError(f"score {row[1]!r} is not a number", lineno, name) from None
        labels.append(row[0].strip())
        scores.append(score)
    return RankSeries(labels, scores)


@dataclass
class KendallResult:
    tau: float
    significant: bool
    p_value: float
    method: str
    n: int

    def to_dict(self):
        return {"tau": self.tau, "significant": self.significant, "p_value": self.p_value,
                "method": self.method, "n": self.n}


def _tie_groups(x):
    _, counts = np.unique(x, return_counts=True)
    return counts[counts > 1]


def _concordance(x, y):
    iu, ju = np.triu_indices(len(x), 1)
    return int(np.sum(np.sign(x[iu] - x[ju]) * np.sign(y[iu] - y[ju])))


def _asymptotic_p(s, x, y):
    n = len(x)
    tx, ty = _tie_groups(x), _tie_groups(y)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = float(np.sum(tx * (tx - 1) * (2 * tx + 5)))
    vu = float(np.sum(ty * (ty - 1) * (2 * ty + 5)))
    var = (v0 - vt - vu) / 18.0
    var += float(np.sum(tx * (tx - 1))) * float(np.sum(ty * (ty - 1))) / (2.0 * n * (n - 1))
    if n > 2:
        var += (float(np.sum(tx * (tx - 1) * (tx - 2))) * float(np.sum(ty * (ty - 1) * (ty - 2)))
                / (9.0 * n * (n - 1) * (n - 2)))
    if var <= 0:
        return 1.0
    return math.erfc(abs(s) / math.sqrt(var) / math.sqrt(2.0))


def kendall(a, b, alpha=ALPHA):
    """Kendall tau-b between two rankings of the same items.

    Significance is two-sided: an exact permutation test over all orderings
    for up to ten items, the tie-corrected normal approximation beyond.
    """
    da, db = a.as_dict(), b.as_dict()
    if da.keys() != db.keys():
        raise DomainError("rank series cover different labels")
    n = len(da)
    if n < 2:
        raise DomainError("kendall needs at least two items")
    keys = a.labels
    x = np.array([da[k] for k in keys], dtype=np.float64)
    y = np.array([db[k] for k in keys], dtype=np.float64)
    s = _concordance(x, y)
    n0 = n * (n - 1) // 2
    n1 = int(np.sum(_tie_groups(x) * (_tie_groups(x) - 1) // 2))
    n2 = int(np.sum(_tie_groups(y) * (_tie_groups(y) - 1) // 2))
    denom = math.sqrt((n0 - n1) * (n0 - n2))
    tau = s / denom if denom else float("nan")
    if not denom:
        return KendallResult(tau, False, 1.0, "undefined", n)
    if n <= EXACT_LIMIT:
        hits, total = kernels.permutation_extreme_count(x, y, s)
        p = hits / total
        method = "exact"
    else:
        p = _asymptotic_p(s, x, y)
        method = "asymptotic"
    return KendallResult(tau, p < alpha, p, method, n)
