"""Simple undirected graph representation and traversal primitives.

Vertices are dense integers ``0..n-1``. The adjacency is stored in CSR form
(``indptr``/``indices``) with each neighbor run sorted ascending, plus a
canonical edge array of ``(u, v)`` pairs with ``u < v``. Graphs are immutable
after construction, so read-only use from multiple workers is safe.
"""

from __future__ import annotations

import gzip
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import IncompatibleGraphsError, ParseError

log = logging.getLogger(__name__)

#: Sentinel used in distance vectors for vertices with no path to the source.
UNREACHABLE = -1

COMMENT_PREFIXES = ("#", "%")


class Graph:
    """Simple, undirected, unlabelled graph with dense vertex ids."""

    __slots__ = ("n", "m", "indptr", "indices", "edges", "labels", "_csr")

    def __init__(self, n: int, edges: np.ndarray, labels: Sequence[str] | None = None):
        """Build from a canonical ``(m, 2)`` array of edges with ``u < v``.

        Use :meth:`from_edges` for arbitrary edge iterables; this constructor
        assumes the edge array is already normalized and unique.
        """
        self.n = int(n)
        self.edges = edges
        self.m = int(len(edges))
        deg = np.zeros(self.n, dtype=np.int64)
        if self.m:
            np.add.at(deg, edges[:, 0], 1)
            np.add.at(deg, edges[:, 1], 1)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.empty(2 * self.m, dtype=np.int64)
        cursor = indptr[:-1].copy()
        for u, v in edges:
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        # sort each neighbor run so adjacency lists are ordered
        for v in range(self.n):
            indices[indptr[v]:indptr[v + 1]].sort()
        self.indptr = indptr
        self.indices = indices
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        if len(self.labels) != self.n:
            raise ValueError(f"{len(self.labels)} labels for {self.n} vertices")
        for arr in (self.edges, self.indptr, self.indices):
            arr.setflags(write=False)
        self._csr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph from an edge iterable.

        Self-loops are dropped and duplicate edges collapsed, mirroring the
        normalization done by :func:`load_graph`.
        """
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                continue
            seen.add((u, v) if u < v else (v, u))
        arr = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
        return cls(n, arr, labels)

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (read-only view)."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def edge_keys(self) -> np.ndarray:
        """Edges encoded as ``u * n + v`` (u < v), sorted. Used for set ops."""
        if self.m == 0:
            return np.empty(0, dtype=np.int64)
        keys = self.edges[:, 0] * np.int64(self.n) + self.edges[:, 1]
        return np.sort(keys)

    def adjacency_matrix(self) -> csr_matrix:
        """Symmetric 0/1 adjacency as a cached scipy CSR matrix."""
        if self._csr is None:
            data = np.ones(2 * self.m, dtype=np.float64)
            self._csr = csr_matrix((data, self.indices.copy(), self.indptr.copy()),
                                   shape=(self.n, self.n))
        return self._csr

    def validate(self) -> None:
        """Check the structural invariants; raises ``ValueError`` on breach."""
        if self.m != len({(int(u), int(v)) for u, v in self.edges}):
            raise ValueError("duplicate edges")
        if np.any(self.edges[:, 0] >= self.edges[:, 1]):
            raise ValueError("edge array not normalized to u < v")
        if self.m and (self.edges.min() < 0 or self.edges.max() >= self.n):
            raise ValueError("vertex id out of range")
        if int(self.indptr[-1]) != 2 * self.m:
            raise ValueError("adjacency length does not match 2m")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceRow:
    """Hop counts from one source vertex; UNREACHABLE marks no path."""

    source: int
    dist: np.ndarray


@dataclass(frozen=True)
class EdgeSetDiff:
    """Unordered-pair edge counts shared / exclusive between two graphs."""

    common: int
    only_original: int
    only_anon: int


@dataclass
class ParseOptions:
    """Knobs for :func:`load_graph`.

    ``allow_extra_columns`` accepts lines with more than two tokens (weights,
    timestamps) and ignores the extras; otherwise any line whose token count
    is not exactly two is a parse error.
    """

    allow_extra_columns: bool = False
    comment_prefixes: tuple[str, ...] = COMMENT_PREFIXES


def _open_text(source: str | Path | IO) -> IO:
    if isinstance(source, (str, Path)):
        raw = Path(source).open("rb")
    else:
        raw = source
    probe = raw.read(0)
    if isinstance(probe, str):
        return raw  # already a text stream
    head = raw.read(2)
    raw.seek(0)
    if head == b"\x1f\x8b":
        raw = gzip.open(raw, "rb")
    return io.TextIOWrapper(raw, encoding="utf-8", errors="replace")


def load_graph(source: str | Path | IO, options: ParseOptions | None = None) -> Graph:
    """Read a whitespace-separated edge list into a normalized Graph.

    Vertex tokens may be arbitrary strings; they are remapped to dense ids in
    first-seen order and the original tokens are kept in ``Graph.labels``.
    Lines starting with '#' or '%' are comments. Gzip input is decompressed
    transparently. Duplicate edges and self-loops are dropped (counts logged).
    """
    opts = options or ParseOptions()
    ids: dict[str, int] = {}
    edge_set: set[tuple[int, int]] = set()
    dup_count = 0
    loop_count = 0

    with _open_text(source) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(opts.comment_prefixes):
                continue
            tokens = line.split()
            if len(tokens) < 2 or (len(tokens) > 2 and not opts.allow_extra_columns):
                raise ParseError(
                    f"expected a vertex pair, got {len(tokens)} tokens: {line!r}",
                    line_no=line_no,
                )
            a, b = tokens[0], tokens[1]
            u = ids.setdefault(a, len(ids))
            v = ids.setdefault(b, len(ids))
            if u == v:
                loop_count += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in edge_set:
                dup_count += 1
            else:
                edge_set.add(key)

    if not edge_set:
        raise ParseError("no edges found in input")
    if dup_count or loop_count:
        log.info("normalized input: dropped %d duplicate edges, %d self-loops",
                 dup_count, loop_count)

    n = len(ids)
    labels = [None] * n
    for token, idx in ids.items():
        labels[idx] = token
    arr = np.array(sorted(edge_set), dtype=np.int64)
    return Graph(n, arr, labels)


def write_edge_list(g: Graph, target: str | Path | IO) -> None:
    """Write ``u v`` lines (dense ids, u < v, sorted) for external reuse."""
    own = isinstance(target, (str, Path))
    fh = open(target, "w", encoding="utf-8") if own else target
    try:
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
    finally:
        if own:
            fh.close()


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    """Exact unweighted hop counts from ``source``."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range for n={g.n}")
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    indptr, indices = g.indptr, g.indices
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt: list[int] = []
        for u in frontier:
            for v in indices[indptr[u]:indptr[u + 1]].tolist():
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    dist.setflags(write=False)
    return DistanceRow(source=source, dist=dist)


def all_pairs_distances(g: Graph) -> np.ndarray:
    """All-pairs BFS hop counts as an ``(n, n)`` int32 matrix.

    Backed by scipy's csgraph kernel (C speed); equivalent to running
    :func:`bfs_distances` from every source. UNREACHABLE marks missing paths.
    """
    if g.m == 0:
        d = np.full((g.n, g.n), UNREACHABLE, dtype=np.int32)
        np.fill_diagonal(d, 0)
        return d
    mat = shortest_path(g.adjacency_matrix(), method="D", directed=False,
                        unweighted=True)
    out = np.where(np.isinf(mat), UNREACHABLE, mat).astype(np.int32)
    return out


def eccentricity(g: Graph, source: int) -> int:
    """Largest finite hop count from ``source``; 0 for isolated vertices."""
    row = bfs_distances(g, source).dist
    return int(row.max())


def eccentricities(g: Graph, dist: np.ndarray | None = None) -> np.ndarray:
    """Per-vertex eccentricity; unreachable pairs are ignored (sentinel < 0)."""
    d = all_pairs_distances(g) if dist is None else dist
    return d.max(axis=1).astype(np.int64)


def edge_diff(g: Graph, h: Graph) -> EdgeSetDiff:
    """Count edges shared by / exclusive to two graphs on one vertex set."""
    if g.n != h.n:
        raise IncompatibleGraphsError(f"vertex counts differ: {g.n} != {h.n}")
    common = len(np.intersect1d(g.edge_keys(), h.edge_keys(), assume_unique=True))
    return EdgeSetDiff(common=common, only_original=g.m - common,
                       only_anon=h.m - common)


def complement_size(g: Graph) -> int:
    """Number of vertex pairs not joined by an edge: n(n-1)/2 - m."""
    return g.n * (g.n - 1) // 2 - g.m
