"""Minimum spanning forests on dense matrices and a disjoint-set structure."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np

from .graph_core import WeightMatrix, validate


class Edge(NamedTuple):
    u: int
    v: int
    weight: float


def edge_key(e: Edge) -> tuple:
    """Global edge order: weight, then smaller endpoint, then larger."""
    return (e.weight, e.u, e.v)


@dataclass(frozen=True)
class Forest:
    """Edges of a minimum spanning forest sorted by :func:`edge_key`.

    ``labels[i]`` is the index of the tree containing vertex ``i``; trees are
    numbered by their smallest vertex. A connected input yields ``n - 1``
    edges and a single label.
    """

    n: int
    edges: tuple
    total_weight: float
    labels: np.ndarray

    @property
    def connected(self) -> bool:
        return len(self.edges) == self.n - 1

    @property
    def n_components(self) -> int:
        return self.n - len(self.edges)

    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.edges], dtype=np.float64)


@numba.njit(cache=True, nogil=True)
def _edge_less(w1, p1, v1, w2, p2, v2):
    if w1 != w2:
        return w1 < w2
    a1, a2 = min(p1, v1), min(p2, v2)
    if a1 != a2:
        return a1 < a2
    return max(p1, v1) < max(p2, v2)


@numba.njit(cache=True, nogil=True)
def _prim_dense(w):
    n = w.shape[0]
    in_tree = np.zeros(n, dtype=np.bool_)
    key = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    labels = np.full(n, -1, dtype=np.int64)
    eu = np.empty(n - 1, dtype=np.int64)
    ev = np.empty(n - 1, dtype=np.int64)
    ew = np.empty(n - 1, dtype=np.float64)
    m = 0
    root = -1
    for _ in range(n):
        best = -1
        for v in range(n):
            if in_tree[v] or parent[v] < 0:
                continue
            if best < 0 or _edge_less(key[v], parent[v], v, key[best], parent[best], best):
                best = v
        if best < 0:
            # no finite crossing edge left: open a new tree at the lowest free vertex
            for v in range(n):
                if not in_tree[v]:
                    best = v
                    break
            root = best
        else:
            p = parent[best]
            eu[m] = min(p, best)
            ev[m] = max(p, best)
            ew[m] = key[best]
            m += 1
        in_tree[best] = True
        labels[best] = root
        row = w[best]
        for v in range(n):
            if in_tree[v]:
                continue
            x = row[v]
            if not np.isfinite(x):
                continue
            if parent[v] < 0 or _edge_less(x, best, v, key[v], parent[v], v):
                key[v] = x
                parent[v] = best
    return eu[:m], ev[:m], ew[:m], labels


def mst_prim(g) -> Forest:
    """Minimum spanning forest of a dense weight matrix by Prim's algorithm.

    Runs in O(n^2). Ties are broken by the global (weight, u, v) order so the
    result is unique. A disconnected graph is not an error: the forest then
    has fewer than ``n - 1`` edges and ``labels`` tells the trees apart.
    """
    g = validate(g)
    eu, ev, ew, labels = _prim_dense(np.ascontiguousarray(g.w))
    order = np.lexsort((ev, eu, ew))
    edges = tuple(Edge(int(eu[k]), int(ev[k]), float(ew[k])) for k in order)
    total = math.fsum(ew)
    labels.flags.writeable = False
    return Forest(g.n, edges, total, labels)


class DisjointSets:
    """Union-find over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.component_count = n

    def __len__(self):
        return len(self.parent)

    def _check(self, x: int) -> None:
        if not 0 <= x < len(self.parent):
            raise IndexError(f"vertex {x} out of range for {len(self.parent)} elements")

    def find(self, x: int) -> int:
        self._check(x)
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, u: int, v: int) -> bool:
        """Merge the sets of ``u`` and ``v``; return False if already joined."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.component_count -= 1
        return True

    def connected(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    def snapshot(self) -> DisjointSets:
        """Independent O(n) copy."""
        other = DisjointSets.__new__(DisjointSets)
        other.parent = self.parent.copy()
        other.size = self.size.copy()
        other.component_count = self.component_count
        return other
