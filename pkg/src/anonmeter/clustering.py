"""Community detection and the precision-index clustering divergence.

Two built-in clusterers are provided: greedy modularity agglomeration from
singletons (fastgreedy) and multi-level local modularity optimization with
super-vertex aggregation (multilevel). Externally produced assignments load
from text files so other methods can be scored without reimplementing them.
"""

from __future__ import annotations

import heapq
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .errors import ParseError, UndefinedMetricError
from .graph import Graph

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class ClusterAssignment:
    """Hard partition of the vertex set; labels are dense 0..q-1."""

    labels: np.ndarray
    method: str
    q: int

    def __post_init__(self):
        if self.q < 1 or len(np.unique(self.labels)) != self.q:
            raise ValueError("labels are not dense 0..q-1")


@dataclass(frozen=True)
class PrecisionScore:
    precision: float
    loss: float
    #: True when every predicted cluster is a singleton - the index is
    #: trivially 1.0 there and reports should flag it.
    degenerate: bool = False


def modularity(g: Graph, labels: Sequence[int]) -> float:
    """Newman modularity of a partition on an unweighted graph."""
    if g.m == 0:
        return 0.0
    labels = np.asarray(labels)
    deg = g.degrees().astype(np.float64)
    m = float(g.m)
    internal = Counter()
    for u, v in g.edges:
        if labels[u] == labels[v]:
            internal[int(labels[u])] += 1
    q = 0.0
    for c in np.unique(labels):
        dtot = float(deg[labels == c].sum())
        q += internal.get(int(c), 0) / m - (dtot / (2.0 * m)) ** 2
    return q


def _densify(raw: Sequence[int]) -> tuple[np.ndarray, int]:
    remap: dict[int, int] = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, lbl in enumerate(raw):
        out[i] = remap.setdefault(lbl, len(remap))
    return out, len(remap)


# ---------------------------------------------------------------------------
# Multilevel (Louvain-style local moves + aggregation)
# ---------------------------------------------------------------------------

def _one_level(adj: list[dict[int, float]], k: list[float], two_w: float,
               order: Sequence[int]) -> tuple[list[int], bool]:
    """Local-move phase. Returns (node -> community, any_move_happened).

    A vertex moves to the neighboring community with the largest positive
    modularity gain; candidate communities are scanned in ascending id so
    exact ties resolve to the smallest id. Sweeps repeat until a full sweep
    moves nothing.
    """
    nc = len(adj)
    node2com = list(range(nc))
    com_tot = list(k)
    moved_any = False
    while True:
        moved = False
        for node in order:
            old = node2com[node]
            dnc: dict[int, float] = {}
            for nb, w in adj[node].items():
                c = node2com[nb]
                dnc[c] = dnc.get(c, 0.0) + w
            com_tot[old] -= k[node]
            best_c = old
            best_score = dnc.get(old, 0.0) - com_tot[old] * k[node] / two_w
            for c in sorted(dnc):
                if c == old:
                    continue
                score = dnc[c] - com_tot[c] * k[node] / two_w
                if score > best_score + _GAIN_EPS:
                    best_c, best_score = c, score
            com_tot[best_c] += k[node]
            node2com[node] = best_c
            if best_c != old:
                moved = True
                moved_any = True
        if not moved:
            return node2com, moved_any


def _aggregate(adj: list[dict[int, float]], selfw: list[float],
               labels: list[int], q: int):
    new_adj: list[dict[int, float]] = [{} for _ in range(q)]
    new_selfw = [0.0] * q
    for v, nbrs in enumerate(adj):
        cv = labels[v]
        new_selfw[cv] += selfw[v]
        for nb, w in nbrs.items():
            cn = labels[nb]
            if cn == cv:
                new_selfw[cv] += w / 2.0  # each internal edge visited twice
            else:
                d = new_adj[cv]
                d[cn] = d.get(cn, 0.0) + w
    new_k = [sum(new_adj[c].values()) + 2.0 * new_selfw[c] for c in range(q)]
    return new_adj, new_selfw, new_k


def cluster_multilevel(g: Graph, seed: int = 0,
                       order: Sequence[int] | None = None) -> ClusterAssignment:
    """Modularity clustering by local moves and super-vertex aggregation.

    Deterministic for a given ``seed``, which drives the vertex visit order.
    ``order`` overrides the first-level visit order explicitly (useful for
    reproducing a run under a vertex relabeling); later levels always use the
    seeded stream.
    """
    if g.m == 0:
        raise UndefinedMetricError("clustering requires at least one edge")
    rng = random.Random(seed)
    adj: list[dict[int, float]] = [
        {int(nb): 1.0 for nb in g.neighbors(v)} for v in range(g.n)
    ]
    selfw = [0.0] * g.n
    k = [float(g.degree(v)) for v in range(g.n)]
    two_w = float(2 * g.m)

    assignment = list(range(g.n))  # original vertex -> current-level node
    first_level = True
    while True:
        nc = len(adj)
        if order is not None and first_level:
            visit = list(order)
        else:
            visit = list(range(nc))
            rng.shuffle(visit)
        first_level = False
        node2com, moved = _one_level(adj, k, two_w, visit)
        if not moved:
            break
        # renumber communities by first appearance along the visit order so
        # aggregated node ids are stable across equivalent runs
        renum: dict[int, int] = {}
        for node in visit:
            renum.setdefault(node2com[node], len(renum))
        labels = [renum[c] for c in node2com]
        assignment = [labels[assignment[v]] for v in range(g.n)]
        q = len(renum)
        if q == nc:
            break
        adj, selfw, k = _aggregate(adj, selfw, labels, q)

    dense, q = _densify(assignment)
    return ClusterAssignment(labels=dense, method="multilevel", q=q)


# ---------------------------------------------------------------------------
# Fastgreedy (CNM agglomeration)
# ---------------------------------------------------------------------------

def cluster_fastgreedy(g: Graph) -> ClusterAssignment:
    """Greedy modularity agglomeration, cut at the maximum-modularity level.

    Starts from singletons and repeatedly merges the connected community
    pair with the largest modularity gain (lazy max-heap with revalidation).
    Exact gain ties break to the lexicographically smallest id pair. The
    merged community keeps the smaller id.
    """
    if g.m == 0:
        raise UndefinedMetricError("clustering requires at least one edge")
    n = g.n
    m = float(g.m)
    deg = [float(d) for d in g.degrees()]
    nbr_w: list[dict[int, float]] = [
        {int(nb): 1.0 for nb in g.neighbors(v)} for v in range(n)
    ]
    alive = [True] * n

    def gain(a: int, b: int) -> float:
        return nbr_w[a][b] / m - deg[a] * deg[b] / (2.0 * m * m)

    heap: list[tuple[float, int, int]] = []
    for u, v in g.edges:
        heap.append((-gain(int(u), int(v)), int(u), int(v)))
    heapq.heapify(heap)

    q_now = -sum(d * d for d in deg) / (4.0 * m * m)  # all-singletons modularity
    best_q, best_step = q_now, 0
    merges: list[tuple[int, int]] = []

    while heap:
        neg_dq, a, b = heapq.heappop(heap)
        if not (alive[a] and alive[b]) or b not in nbr_w[a]:
            continue
        current = gain(a, b)
        if -neg_dq != current:
            heapq.heappush(heap, (-current, a, b))
            continue
        # merge b into a (a < b by construction)
        merges.append((a, b))
        q_now += current
        alive[b] = False
        deg[a] += deg[b]
        for c, w in nbr_w[b].items():
            if c == a:
                continue
            nbr_w[c].pop(b, None)
            nbr_w[a][c] = nbr_w[a].get(c, 0.0) + w
            nbr_w[c][a] = nbr_w[a][c]
        nbr_w[a].pop(b, None)
        nbr_w[b] = {}
        for c in nbr_w[a]:
            pair = (a, c) if a < c else (c, a)
            heapq.heappush(heap, (-gain(*pair), *pair))
        if q_now > best_q + _GAIN_EPS:
            best_q, best_step = q_now, len(merges)

    # replay merges up to the best cut with a min-id union-find
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in merges[:best_step]:
        ra, rb = find(a), find(b)
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        parent[hi] = lo

    dense, q = _densify([find(v) for v in range(n)])
    return ClusterAssignment(labels=dense, method="fastgreedy", q=q)


# ---------------------------------------------------------------------------
# External assignments and the precision index
# ---------------------------------------------------------------------------

def load_assignment(source: str | Path | IO, g: Graph) -> ClusterAssignment:
    """Read a "vertex label" file covering every vertex of ``g``.

    Vertex tokens are resolved through the graph's original labels. An
    optional ``# method: <id>`` header names the producing algorithm.
    """
    own = isinstance(source, (str, Path))
    fh = open(source, "r", encoding="utf-8") if own else source
    method = "external"
    token_to_id = {lbl: i for i, lbl in enumerate(g.labels)}
    raw: dict[int, str] = {}
    try:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if line.lower().startswith("# method:"):
                method = f"external:{line.split(':', 1)[1].strip()}"
                continue
            if not line or line.startswith(("#", "%")):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError(f"expected 'vertex label', got {line!r}",
                                 line_no=line_no)
            vtx, lbl = tokens
            if vtx not in token_to_id:
                raise ParseError(f"unknown vertex {vtx!r}", line_no=line_no)
            vid = token_to_id[vtx]
            if vid in raw:
                raise ParseError(f"duplicate vertex {vtx!r}", line_no=line_no)
            raw[vid] = lbl
    finally:
        if own:
            fh.close()
    missing = [g.labels[v] for v in range(g.n) if v not in raw]
    if missing:
        raise ParseError(f"assignment misses {len(missing)} vertices "
                         f"(first: {missing[0]!r})")
    dense, q = _densify([raw[v] for v in range(g.n)])
    return ClusterAssignment(labels=dense, method=method, q=q)


def precision_index(truth: ClusterAssignment,
                    predicted: ClusterAssignment) -> PrecisionScore:
    """Share of vertices whose predicted cluster votes their true label.

    Every predicted cluster adopts the most frequent true label among its
    members (ties to the smallest label id); a vertex scores when its own
    true label equals the adopted one. All-singleton predictions trivially
    score 1.0 and are flagged degenerate.
    """
    if len(truth.labels) != len(predicted.labels):
        raise ValueError(f"length mismatch: {len(truth.labels)} vs "
                         f"{len(predicted.labels)}")
    n = len(truth.labels)
    members: dict[int, list[int]] = {}
    for v in range(n):
        members.setdefault(int(predicted.labels[v]), []).append(v)
    hits = 0
    for vs in members.values():
        counts = Counter(int(truth.labels[v]) for v in vs)
        top = max(counts.values())
        mode = min(lbl for lbl, c in counts.items() if c == top)
        hits += counts[mode]
    precision = hits / n
    return PrecisionScore(precision=precision, loss=1.0 - precision,
                          degenerate=predicted.q == n)
