"""Generic (application-independent) information loss measures.

Network-level scalars (average distance, clustering coefficient,
transitivity, edge intersection, dominant eigenvalue), vertex-level vectors
(betweenness, closeness, degree centrality) and the two error aggregations:
absolute difference for scalars, RMS for vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, UndefinedMetricError
from .graph import Graph, all_pairs_distances, edge_diff

#: Registry order also fixes column order in reports.
SCALAR_METRICS = ("avg_dist", "clustering", "transitivity", "edge_intersection",
                  "lambda1")
VECTOR_METRICS = ("betweenness", "closeness", "degree_centrality")


@dataclass(frozen=True)
class ScalarMetric:
    metric_id: str
    value: float
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VectorMetric:
    metric_id: str
    values: np.ndarray


@dataclass(frozen=True)
class SpectralResult:
    lambda1: float
    eigvec: np.ndarray
    iterations: int
    residual: float


def average_distance(g: Graph, dist: np.ndarray | None = None) -> ScalarMetric:
    """Mean hop count over all reachable unordered vertex pairs.

    Unreachable pairs are excluded from the mean and reported in
    ``detail["unreachable_pairs"]``. Pass a precomputed matrix from
    :func:`anonmeter.graph.all_pairs_distances` to share BFS work.
    """
    if g.n < 2:
        raise UndefinedMetricError("average distance needs at least 2 vertices")
    d = all_pairs_distances(g) if dist is None else dist
    reachable = int((d > 0).sum()) // 2
    if reachable == 0:
        raise UndefinedMetricError("no reachable vertex pair (empty edge set)")
    total = int(d[d > 0].sum(dtype=np.int64)) // 2
    unreachable = int((d < 0).sum()) // 2
    return ScalarMetric("avg_dist", total / reachable,
                        detail={"unreachable_pairs": unreachable})


def _triangles_per_vertex(g: Graph) -> np.ndarray:
    if g.m == 0:
        return np.zeros(g.n)
    a = g.adjacency_matrix()
    return np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() / 2.0


def clustering_coefficient(g: Graph) -> ScalarMetric:
    """Average over vertices of 2T(v) / deg(v)(deg(v)-1); 0 when deg <= 1."""
    deg = g.degrees().astype(np.float64)
    tri = _triangles_per_vertex(g)
    denom = deg * (deg - 1.0)
    per_vertex = np.divide(2.0 * tri, denom, out=np.zeros(g.n), where=denom > 0)
    return ScalarMetric("clustering", float(per_vertex.mean()))


def transitivity(g: Graph) -> ScalarMetric:
    """3 * triangles / triads, triads being paths of length two."""
    deg = g.degrees().astype(np.int64)
    triads = int((deg * (deg - 1) // 2).sum())
    if triads == 0:
        raise UndefinedMetricError("no triad (path of length 2) in graph")
    tri_total = float(_triangles_per_vertex(g).sum()) / 3.0
    return ScalarMetric("transitivity", 3.0 * tri_total / triads)


def edge_intersection(g: Graph, h: Graph) -> ScalarMetric:
    """Shared-edge ratio |E & E~| / max(|E|, |E~|)."""
    diff = edge_diff(g, h)
    denom = max(g.m, h.m)
    if denom == 0:
        raise UndefinedMetricError("both graphs are empty")
    return ScalarMetric("edge_intersection", diff.common / denom)


def _grouped_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate arange(start, start+count) for each row, vectorized."""
    keep = counts > 0
    starts, counts = starts[keep], counts[keep]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    step = np.ones(total, dtype=np.int64)
    step[0] = starts[0]
    cuts = np.cumsum(counts)[:-1]
    step[cuts] = starts[1:] - (starts[:-1] + counts[:-1]) + 1
    return np.cumsum(step)


def betweenness(g: Graph) -> VectorMetric:
    """Geodesic-flow centrality over ordered (s, t) pairs, scaled by 1/n^2.

    Brandes dependency accumulation, one BFS per source with level-batched
    numpy updates. Endpoints are excluded; no (n-1)(n-2) rescaling is applied,
    so values are a factor away from the common textbook normalization.
    """
    n = g.n
    indptr, indices = g.indptr, g.indices
    bc = np.zeros(n)
    sigma = np.zeros(n)
    dist = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        dist.fill(-1)
        sigma.fill(0.0)
        dist[s] = 0
        sigma[s] = 1.0
        levels = [np.array([s], dtype=np.int64)]
        d = 0
        while levels[-1].size:
            frontier = levels[-1]
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            tgt = indices[_grouped_ranges(starts, counts)]
            src = np.repeat(frontier, counts)
            fresh = np.unique(tgt[dist[tgt] == -1])
            dist[fresh] = d + 1
            mask = dist[tgt] == d + 1
            np.add.at(sigma, tgt[mask], sigma[src[mask]])
            levels.append(fresh)
            d += 1
        delta = np.zeros(n)
        for lev in range(len(levels) - 1, 0, -1):
            nodes = levels[lev]
            if not nodes.size:
                continue
            starts = indptr[nodes]
            counts = indptr[nodes + 1] - starts
            nb = indices[_grouped_ranges(starts, counts)]
            owner = np.repeat(nodes, counts)
            mask = dist[nb] == lev - 1
            pred, w = nb[mask], owner[mask]
            np.add.at(delta, pred, sigma[pred] / sigma[w] * (1.0 + delta[w]))
        delta[s] = 0.0
        bc += delta
    return VectorMetric("betweenness", bc / float(n * n))


def closeness(g: Graph, dist: np.ndarray | None = None) -> VectorMetric:
    """Reachable-count over summed distance, per vertex.

    On a connected graph this is exactly n / sum_j d(v, j); on disconnected
    graphs each vertex is scored within its component, isolated vertices get 0.
    """
    if g.n < 2:
        raise UndefinedMetricError("closeness needs at least 2 vertices")
    d = all_pairs_distances(g) if dist is None else dist
    counts = (d >= 0).sum(axis=1).astype(np.float64)
    sums = np.where(d > 0, d, 0).sum(axis=1).astype(np.float64)
    values = np.divide(counts, sums, out=np.zeros(g.n), where=sums > 0)
    return VectorMetric("closeness", values)


def degree_centrality(g: Graph) -> VectorMetric:
    """deg(v) / m for each vertex (the paper-literal normalization by m)."""
    if g.m == 0:
        raise UndefinedMetricError("degree centrality undefined with m = 0")
    return VectorMetric("degree_centrality", g.degrees() / float(g.m))


def lambda1(g: Graph, tol: float = 1e-9, max_iter: int = 10000) -> SpectralResult:
    """Dominant adjacency eigenvalue by power iteration on A + I.

    The +1 shift keeps bipartite +/-lambda pairs from stalling the iteration;
    it is subtracted from the reported value. Deterministic all-ones start.
    Converged when the eigenvalue estimate moves less than ``tol`` and the
    residual ||A v - lambda v|| is within ``tol``.
    """
    if g.m == 0:
        raise UndefinedMetricError("lambda1 undefined with m = 0")
    a = g.adjacency_matrix()
    v = np.ones(g.n) / np.sqrt(g.n)
    prev = np.inf
    for it in range(1, max_iter + 1):
        y = a @ v + v
        lam_shifted = float(v @ y)
        residual = float(np.linalg.norm(y - lam_shifted * v))
        if abs(lam_shifted - prev) < tol and residual <= tol:
            return SpectralResult(lambda1=lam_shifted - 1.0, eigvec=v,
                                  iterations=it, residual=residual)
        norm = np.linalg.norm(y)
        if norm == 0:
            raise ConvergenceError("power iteration collapsed to zero vector",
                                   last_estimate=lam_shifted - 1.0)
        v = y / norm
        prev = lam_shifted
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations",
        last_estimate=prev - 1.0,
    )


def scalar_error(a: ScalarMetric, b: ScalarMetric) -> float:
    """Absolute difference |m(G) - m(G~)| between two runs of one metric."""
    if a.metric_id != b.metric_id:
        raise ValueError(f"metric mismatch: {a.metric_id} vs {b.metric_id}")
    return abs(a.value - b.value)


def vector_rms_error(a: VectorMetric, b: VectorMetric) -> float:
    """Root mean square of entrywise differences of two per-vertex vectors."""
    if a.metric_id != b.metric_id:
        raise ValueError(f"metric mismatch: {a.metric_id} vs {b.metric_id}")
    if len(a.values) != len(b.values):
        raise ValueError(f"length mismatch: {len(a.values)} vs {len(b.values)}")
    diff = a.values - b.values
    return float(np.sqrt(np.mean(diff * diff)))
