"""RTD-Lite barcode and its scalar summary RTDL.

Both quantities compare two weighted graphs on the same vertex set through
the auxiliary graph ``C`` whose weights are the element-wise minimum of the
(normalized) inputs. ``rtdl_barcode`` returns one interval per edge of the
minimum spanning tree of ``C``; ``rtdl_sum`` returns only the total interval
length, which equals ``weight(MST(A)) - weight(MST(C))``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DimensionMismatchError, DisconnectedInputError, InvalidMatrixError
from .forest import DisjointSets, Edge, Forest, mst_prim
from .graph_core import (
    DEFAULT_QUANTILE,
    DegenerateScaleWarning,
    NormalizationRecord,
    WeightMatrix,
    quantile_divisor,
    scale,
    validate,
)


@dataclass(frozen=True)
class RtdlOptions:
    """Knobs shared by every RTDL entry point.

    ``divisors`` pins the normalization divisors ``(q_a, q_b)`` instead of
    recomputing quantiles; it is used to hold them fixed while
    differentiating. It is ignored when ``normalize`` is false.
    """

    normalize: bool = True
    quantile: float = DEFAULT_QUANTILE
    divisors: Optional[tuple] = None
    allow_infinite_bars: bool = False


DEFAULT_OPTIONS = RtdlOptions()


@dataclass(frozen=True)
class Prepared:
    a: WeightMatrix
    b: WeightMatrix
    c: WeightMatrix
    record: NormalizationRecord


def _divisor(m: WeightMatrix, level: float, name: str) -> float:
    q, degenerate = quantile_divisor(m, level)
    if degenerate:
        warnings.warn(
            f"graph {name} has no positive finite edge weights; using divisor 1",
            DegenerateScaleWarning,
            stacklevel=4,
        )
    return q


def prepare(a, b, options: RtdlOptions = DEFAULT_OPTIONS) -> Prepared:
    """Validate, normalize and build the auxiliary min-graph."""
    a, b = validate(a), validate(b)
    if a.n != b.n:
        raise DimensionMismatchError(f"vertex counts differ: {a.n} vs {b.n}")
    if options.normalize:
        if options.divisors is not None:
            q_a, q_b = (float(x) for x in options.divisors)
        else:
            q_a = _divisor(a, options.quantile, "A")
            q_b = _divisor(b, options.quantile, "B")
        a, b = scale(a, q_a), scale(b, q_b)
        record = NormalizationRecord(options.quantile, q_a, q_b, True)
    else:
        record = NormalizationRecord(options.quantile, 1.0, 1.0, False)
    c = WeightMatrix(np.minimum(a.w, b.w))
    return Prepared(a, b, c, record)


def _check_connected(forest: Forest, name: str, options: RtdlOptions) -> None:
    if not forest.connected and not options.allow_infinite_bars:
        raise DisconnectedInputError(
            f"graph {name} is disconnected ({forest.n_components} components)",
            labels=forest.labels,
            graph=name,
        )


@dataclass(frozen=True)
class RtdlValue:
    value: float
    s_a: float
    s_c: float

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class BarcodeInterval:
    birth: float
    death: float
    birth_edge: Edge
    death_edge: Optional[Edge]

    @property
    def length(self) -> float:
        return self.death - self.birth

    @property
    def is_zero(self) -> bool:
        return self.death == self.birth

    def contains(self, alpha: float) -> bool:
        """Half-open membership: ``birth <= alpha < death``."""
        return self.birth <= alpha < self.death


@dataclass(frozen=True)
class Barcode:
    """RTD-Lite barcode; ``intervals`` follow the sorted MST(C) edge order.

    Zero-length intervals are kept. ``rtdl`` is the sum-only value computed
    from the same spanning trees.
    """

    intervals: tuple
    n: int
    normalization: NormalizationRecord
    direction: str = "AB"
    rtdl: float = 0.0
    s_a: float = 0.0
    s_c: float = 0.0

    def __len__(self):
        return len(self.intervals)

    def pairs(self, drop_zero: bool = False) -> list:
        """``(birth, death)`` pairs sorted by birth then death."""
        return sorted(
            (iv.birth, iv.death) for iv in self.intervals if not (drop_zero and iv.is_zero)
        )

    def lengths(self) -> np.ndarray:
        return np.array([iv.length for iv in self.intervals], dtype=np.float64)

    def total_length(self) -> float:
        return math.fsum(iv.length for iv in self.intervals)

    def count_containing(self, alpha: float) -> int:
        return sum(1 for iv in self.intervals if iv.contains(alpha))

    def to_dict(self, drop_zero: bool = False) -> dict:
        return {
            "n": self.n,
            "direction": self.direction,
            "normalization": self.normalization.to_dict(),
            "intervals": [[_json_float(b), _json_float(d)] for b, d in self.pairs(drop_zero)],
            "rtdl": _json_float(self.rtdl),
        }

    def to_json(self, drop_zero: bool = False, **kwargs) -> str:
        return json.dumps(self.to_dict(drop_zero), **kwargs)


def _json_float(x: float):
    return "inf" if x == math.inf else float(x)


def _parse_json_float(x) -> float:
    return math.inf if x == "inf" else float(x)


def barcode_pairs_from_json(text: str) -> list:
    """Read the ``intervals`` of a barcode JSON document back as floats."""
    doc = json.loads(text)
    return [(_parse_json_float(b), _parse_json_float(d)) for b, d in doc["intervals"]]


def _sum_value(t_a: Forest, t_c: Forest) -> RtdlValue:
    if t_a.n_components > t_c.n_components:
        return RtdlValue(math.inf, math.inf, t_c.total_weight)
    return RtdlValue(t_a.total_weight - t_c.total_weight, t_a.total_weight, t_c.total_weight)


def rtdl_barcode(a, b, options: RtdlOptions = DEFAULT_OPTIONS, direction: str = "AB") -> Barcode:
    """Full RTD-Lite barcode of ``(a, b)``.

    For every edge ``e`` of the sorted MST of ``C`` the edges of the sorted
    MST of ``A`` are added, from the first one on, to a copy of the sub-forest
    built from the previous MST(C) edges until the endpoints of ``e`` meet.
    The interval is ``[c_e, a_t]`` with ``t`` the edge that closed the gap.
    O(n^2 alpha(n)) time.
    """
    prep = prepare(a, b, options)
    t_a = mst_prim(prep.a)
    _check_connected(t_a, "A", options)
    t_c = mst_prim(prep.c)
    _check_connected(t_c, "C", options)

    n = prep.a.n
    a_edges = t_a.edges
    sub_tree = DisjointSets(n)
    intervals = []
    for e in t_c.edges:
        temp = sub_tree.snapshot()
        closing = None
        for cand in a_edges:
            temp.union(cand.u, cand.v)
            if temp.connected(e.u, e.v):
                closing = cand
                break
        death = closing.weight if closing is not None else math.inf
        intervals.append(BarcodeInterval(e.weight, death, e, closing))
        sub_tree.union(e.u, e.v)

    value = _sum_value(t_a, t_c)
    return Barcode(
        tuple(intervals), n, prep.record, direction, value.value, value.s_a, value.s_c
    )


def rtdl_sum(a, b, options: RtdlOptions = DEFAULT_OPTIONS) -> RtdlValue:
    """RTDL as ``weight(MST(A)) - weight(MST(C))`` in O(n^2)."""
    prep = prepare(a, b, options)
    t_a = mst_prim(prep.a)
    _check_connected(t_a, "A", options)
    t_c = mst_prim(prep.c)
    _check_connected(t_c, "C", options)
    return _sum_value(t_a, t_c)


def symmetrized_rtdl(a, b, options: RtdlOptions = DEFAULT_OPTIONS) -> float:
    """``RTDL(a, b) + RTDL(b, a)``."""
    if options.normalize and options.divisors is not None:
        swapped = RtdlOptions(
            options.normalize, options.quantile, tuple(reversed(options.divisors)),
            options.allow_infinite_bars,
        )
    else:
        swapped = options
    return rtdl_sum(a, b, options).value + rtdl_sum(b, a, swapped).value


def pairwise_distances(points, metric: str = "euclidean") -> WeightMatrix:
    """Complete-graph weight matrix of pairwise distances between rows."""
    p = np.asarray(points, dtype=np.float64)
    if p.ndim != 2:
        raise InvalidMatrixError(f"point set must be a 2-D array, got {p.ndim}-D")
    if p.shape[1] == 0:
        raise InvalidMatrixError("points must have at least one coordinate")
    if p.shape[0] < 2:
        raise InvalidMatrixError(f"need at least 2 points, got {p.shape[0]}")
    d = squareform(pdist(p, metric=metric))
    return validate(d, copy=False)


def rtdl_from_clouds(
    p,
    q,
    metric: str = "euclidean",
    options: RtdlOptions = DEFAULT_OPTIONS,
    barcode: bool = False,
):
    """RTDL between two point clouds with row-wise correspondence.

    Returns an :class:`RtdlValue`, or a :class:`Barcode` when ``barcode`` is
    true (its ``rtdl`` field carries the scalar).
    """
    p, q = np.asarray(p), np.asarray(q)
    if p.shape[0] != q.shape[0]:
        raise DimensionMismatchError(f"point counts differ: {p.shape[0]} vs {q.shape[0]}")
    a = pairwise_distances(p, metric)
    b = pairwise_distances(q, metric)
    if barcode:
        return rtdl_barcode(a, b, options)
    return rtdl_sum(a, b, options)
