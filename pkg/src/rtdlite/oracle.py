"""Brute-force references for verification.

Nothing here touches :mod:`rtdlite.forest`: component counts come from a
private union-find and from breadth-first search, and spanning trees are
enumerated through Pruefer sequences.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

MAX_BRUTE_FORCE_N = 6


def _as_array(g) -> np.ndarray:
    w = np.asarray(g, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {w.shape}")
    return w


def components_at(g, alpha: float) -> int:
    """Components of the subgraph keeping edges with weight <= alpha."""
    w = _as_array(g)
    n = w.shape[0]
    parent = list(range(n))

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    count = n
    iu, ju = np.nonzero(np.triu(w <= alpha, 1))
    for i, j in zip(iu.tolist(), ju.tolist()):
        ri, rj = root(i), root(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            count -= 1
    return count


def components_at_bfs(g, alpha: float) -> int:
    """Same count as :func:`components_at`, by breadth-first traversal."""
    w = _as_array(g)
    n = w.shape[0]
    adj = (w <= alpha) & ~np.eye(n, dtype=bool)
    seen = np.zeros(n, dtype=bool)
    count = 0
    for s in range(n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in np.flatnonzero(adj[x] & ~seen):
                seen[y] = True
                queue.append(y)
    return count


def probe_thresholds(weights) -> np.ndarray:
    """Distinct finite weights, midpoints between them, and one value below."""
    vals = np.asarray(weights, dtype=np.float64).ravel()
    distinct = np.unique(vals[np.isfinite(vals)])
    if distinct.size == 0:
        return np.array([0.0])
    below = distinct[0] - 1.0
    mids = (distinct[:-1] + distinct[1:]) / 2
    return np.unique(np.concatenate([[below], distinct, mids]))


@dataclass(frozen=True)
class ThresholdProfile:
    thresholds: np.ndarray
    ker_dims: np.ndarray
    components_a: np.ndarray
    components_c: np.ndarray


def _normalized(w: np.ndarray, level: float) -> np.ndarray:
    vals = w[np.triu_indices(w.shape[0], 1)]
    vals = vals[np.isfinite(vals)]
    if vals.size == 0:
        return w
    q = float(np.quantile(vals, level))
    if q <= 0:
        q = float(vals.max())
    return w / q if q > 0 else w


def ker_profile(a, b, normalize: bool = True, quantile: float = 0.9, counter=components_at):
    """Kernel dimension ``comp(A<=alpha) - comp(C<=alpha)`` at every probe.

    Probes are the distinct weights of ``C``, the midpoints between them and
    one value below the smallest.
    """
    wa, wb = _as_array(a), _as_array(b)
    if wa.shape != wb.shape:
        raise ValueError(f"shape mismatch: {wa.shape} vs {wb.shape}")
    if normalize:
        wa, wb = _normalized(wa, quantile), _normalized(wb, quantile)
    wc = np.minimum(wa, wb)
    probes = probe_thresholds(wc[np.triu_indices(wc.shape[0], 1)])
    comp_a = np.array([counter(wa, t) for t in probes])
    comp_c = np.array([counter(wc, t) for t in probes])
    return ThresholdProfile(probes, comp_a - comp_c, comp_a, comp_c)


def prufer_to_edges(seq, n: int) -> list:
    """Decode a Pruefer sequence into the edge list of a labeled tree."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return edges


def all_spanning_trees(n: int):
    """All ``n**(n-2)`` labeled trees on ``n`` vertices as edge lists."""
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_to_edges(seq, n)


def brute_force_mst_weight(g) -> float:
    """Minimum total weight over every labeled spanning tree (n <= 6)."""
    w = _as_array(g)
    n = w.shape[0]
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got {n}")
    best = math.inf
    for edges in all_spanning_trees(n):
        total = math.fsum(w[u, v] for u, v in edges)
        best = min(best, total)
    if best == math.inf:
        raise ValueError("graph has no finite spanning tree")
    return best


def brute_force_msts(g) -> list:
    """Every minimum-weight spanning tree, as sorted edge lists."""
    w = _as_array(g)
    best = brute_force_mst_weight(w)
    out = []
    for edges in all_spanning_trees(w.shape[0]):
        if math.fsum(w[u, v] for u, v in edges) == best:
            out.append(sorted(edges))
    return out
