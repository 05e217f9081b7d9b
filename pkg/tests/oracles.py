"""Independent brute-force oracles used to pin expected metric values.

Everything here is deliberately naive (enumeration, Floyd-Warshall, explicit
path listing, determinant expansion) and shares no code with the package
under test. Only usable for tiny graphs.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np

INF = math.inf


def floyd_warshall(n: int, edges: list[tuple[int, int]]) -> list[list[float]]:
    d = [[0.0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = 1.0
        d[v][u] = 1.0
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return d


def average_distance(n: int, edges: list[tuple[int, int]]) -> float | None:
    """Mean hop count over reachable unordered pairs; None if no pair reachable."""
    d = floyd_warshall(n, edges)
    total = 0.0
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] < INF:
                total += d[i][j]
                count += 1
    return total / count if count else None


def triangles_per_vertex(n: int, edges: list[tuple[int, int]]) -> list[int]:
    eset = {frozenset(e) for e in edges}
    t = [0] * n
    for a, b, c in itertools.combinations(range(n), 3):
        if {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))} <= eset:
            t[a] += 1
            t[b] += 1
            t[c] += 1
    return t


def clustering_coefficient(n: int, edges: list[tuple[int, int]]) -> float:
    deg = degree_list(n, edges)
    t = triangles_per_vertex(n, edges)
    per_vertex = [
        2 * t[v] / (deg[v] * (deg[v] - 1)) if deg[v] >= 2 else 0.0
        for v in range(n)
    ]
    return sum(per_vertex) / n


def transitivity(n: int, edges: list[tuple[int, int]]) -> float | None:
    deg = degree_list(n, edges)
    triads = sum(d * (d - 1) // 2 for d in deg)
    if triads == 0:
        return None
    tri_total = sum(triangles_per_vertex(n, edges)) // 3
    return 3 * tri_total / triads


def degree_list(n: int, edges: list[tuple[int, int]]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _all_paths(adj: dict[int, set[int]], s: int, t: int) -> list[list[int]]:
    """Every simple path from s to t, by exhaustive DFS."""
    out: list[list[int]] = []

    def walk(path: list[int]) -> None:
        head = path[-1]
        if head == t:
            out.append(list(path))
            return
        for nb in sorted(adj[head]):
            if nb not in path:
                path.append(nb)
                walk(path)
                path.pop()

    walk([s])
    return out


def betweenness(n: int, edges: list[tuple[int, int]]) -> list[float]:
    """Paper-style betweenness: ordered (s, t) pairs, 1/n^2 normalization.

    Counts geodesics by listing every simple path and keeping the shortest.
    """
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    score = [0.0] * n
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            paths = _all_paths(adj, s, t)
            if not paths:
                continue
            shortest = min(len(p) for p in paths)
            geos = [p for p in paths if len(p) == shortest]
            for i in range(n):
                if i in (s, t):
                    continue
                through = sum(1 for p in geos if i in p)
                score[i] += through / len(geos)
    return [x / (n * n) for x in score]


def closeness(n: int, edges: list[tuple[int, int]]) -> list[float]:
    d = floyd_warshall(n, edges)
    out = []
    for v in range(n):
        reach = [d[v][j] for j in range(n) if d[v][j] < INF]
        denom = sum(reach)
        out.append(len(reach) / denom if denom > 0 else 0.0)
    return out


def eccentricities(n: int, edges: list[tuple[int, int]]) -> list[int]:
    d = floyd_warshall(n, edges)
    return [int(max((x for x in row if x < INF), default=0)) for row in d]


def frv(n: int, edges_a, edges_b) -> float:
    ea = eccentricities(n, edges_a)
    eb = eccentricities(n, edges_b)
    return sum(abs(a - b) for a, b in zip(ea, eb)) / n


def char_poly_lambda1(n: int, edges: list[tuple[int, int]]) -> float:
    """Largest eigenvalue via explicit Leibniz expansion of det(A - xI).

    Builds the characteristic polynomial with exact integer coefficients by
    summing over all permutations, then takes the largest real root.
    """
    a = [[0] * n for _ in range(n)]
    for u, v in edges:
        a[u][v] = 1
        a[v][u] = 1

    # entry (i, j) of A - xI as a coefficient list [c0, c1] for c0 + c1*x
    def entry(i: int, j: int) -> list[int]:
        return [a[i][j], -1 if i == j else 0]

    poly = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = [1]
        for i in range(n):
            prod = _poly_mul(prod, entry(i, perm[i]))
        for k, c in enumerate(prod):
            poly[k] += sign * c
    roots = np.roots(list(reversed(poly)))
    real = roots[np.abs(roots.imag) < 1e-8].real
    return float(real.max())


def _perm_sign(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci == 0:
            continue
        for j, cj in enumerate(q):
            out[i + j] += ci * cj
    return out


def precision_index(truth: list[int], predicted: list[int]) -> float:
    """Fraction of vertices whose cluster's most common true label matches."""
    clusters: dict[int, list[int]] = {}
    for v, c in enumerate(predicted):
        clusters.setdefault(c, []).append(v)
    hits = 0
    for members in clusters.values():
        counts = Counter(truth[v] for v in members)
        top = max(counts.values())
        mode = min(lbl for lbl, c in counts.items() if c == top)
        hits += sum(1 for v in members if truth[v] == mode)
    return hits / len(truth)


def candidate_sizes_w0(degrees: list[int]) -> list[int]:
    """With no perturbation the candidate set is the degree equivalence class."""
    freq = Counter(degrees)
    return [freq[d] for d in degrees]


def possible_worlds(m: int, comp: int, w: int) -> int:
    """Count w-subsets of edges times w-subsets of complement, by listing."""
    del_ways = sum(1 for _ in itertools.combinations(range(m), w)) if w <= m else 0
    add_ways = sum(1 for _ in itertools.combinations(range(comp), w)) if w <= comp else 0
    return del_ways * add_ways


def modularity(n: int, edges: list[tuple[int, int]], labels: list[int]) -> float:
    m = len(edges)
    if m == 0:
        return 0.0
    deg = degree_list(n, edges)
    communities = set(labels)
    q = Fraction(0)
    for c in communities:
        members = {v for v in range(n) if labels[v] == c}
        internal = sum(1 for u, v in edges if u in members and v in members)
        dtot = sum(deg[v] for v in members)
        q += Fraction(internal, m) - Fraction(dtot, 2 * m) ** 2
    return float(q)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def best_modularity_partition(n: int, edges: list[tuple[int, int]]):
    """Exhaustive max-modularity partition; returns (partition, Q)."""
    best = None
    best_q = -math.inf
    for part in _set_partitions(list(range(n))):
        labels = [0] * n
        for idx, block in enumerate(part):
            for v in block:
                labels[v] = idx
        q = modularity(n, edges, labels)
        if q > best_q + 1e-12:
            best_q = q
            best = [frozenset(b) for b in part]
    return set(best), best_q


def pagerank(n: int, edges: list[tuple[int, int]], damping: float) -> list[float]:
    """Stationary scores from a dense linear solve of the PageRank equations."""
    deg = degree_list(n, edges)
    p = np.full((n, n), 0.0)
    for u, v in edges:
        p[v, u] += 1.0 / deg[u]
        p[u, v] += 1.0 / deg[v]
    for j in range(n):
        if deg[j] == 0:
            p[:, j] = 1.0 / n
    a = np.eye(n) - damping * p
    b = np.full(n, (1.0 - damping) / n)
    return list(np.linalg.solve(a, b))
