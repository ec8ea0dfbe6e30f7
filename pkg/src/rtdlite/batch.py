"""All-pairs RTDL matrices over a collection of representations."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError
from .graph_core import format_float, validate
from .rtdl import DEFAULT_OPTIONS, RtdlOptions, pairwise_distances, rtdl_sum
from .synth import make_rng

POLICIES = ("ab", "ba", "sym")


@dataclass(frozen=True)
class ComparisonMatrix:
    labels: tuple
    values: np.ndarray
    policy: str
    subsample: Optional[tuple] = None
    indices: Optional[np.ndarray] = None

    def to_csv(self, fh) -> None:
        fh.write("," + ",".join(self.labels) + "\n")
        for label, row in zip(self.labels, self.values):
            fh.write(label + "," + ",".join(format_float(x) for x in row) + "\n")

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "policy": self.policy,
            "subsample": (
                None if self.subsample is None
                else {"size": self.subsample[0], "seed": self.subsample[1]}
            ),
            "values": [["inf" if x == np.inf else float(x) for x in row] for row in self.values],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def subsample_indices(n: int, size: int, seed: int) -> np.ndarray:
    """One sorted index set shared by every cell of a matrix."""
    if not 2 <= size <= n:
        raise ValueError(f"subsample size must be in [2, {n}], got {size}")
    return np.sort(make_rng(seed).choice(n, size=size, replace=False))


def compare_all(
    reps: Sequence,
    policy: str = "ab",
    subsample: Optional[tuple] = None,
    parallelism: int = 1,
    labels: Optional[Sequence[str]] = None,
    options: RtdlOptions = DEFAULT_OPTIONS,
    kind: str = "cloud",
    metric: str = "euclidean",
) -> ComparisonMatrix:
    """RTDL between every ordered pair of representations.

    ``values[i, j]`` is ``RTDL(reps[i], reps[j])`` for policy ``"ab"``, the
    reverse for ``"ba"`` and their sum for ``"sym"``. ``subsample`` is a
    ``(size, seed)`` pair; the same rows are kept for all representations.
    Cells are independent, so the result does not depend on ``parallelism``.
    """
    policy = policy.lower()
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    if len(reps) == 0:
        raise ValueError("need at least one representation")
    if kind not in ("cloud", "matrix"):
        raise ValueError(f"kind must be 'cloud' or 'matrix', got {kind!r}")
    arrays = [np.asarray(r, dtype=np.float64) for r in reps]
    n = arrays[0].shape[0]
    for k, r in enumerate(arrays):
        if r.shape[0] != n:
            raise DimensionMismatchError(f"representation {k} has {r.shape[0]} rows, expected {n}")
    m = len(arrays)
    labels = tuple(labels) if labels is not None else tuple(f"rep{k}" for k in range(m))
    if len(labels) != m:
        raise ValueError(f"{len(labels)} labels for {m} representations")

    idx = None
    if subsample is not None:
        idx = subsample_indices(n, int(subsample[0]), int(subsample[1]))
        if kind == "cloud":
            arrays = [r[idx] for r in arrays]
        else:
            arrays = [r[np.ix_(idx, idx)] for r in arrays]
    if kind == "cloud":
        graphs = [pairwise_distances(r, metric) for r in arrays]
    else:
        graphs = [validate(r) for r in arrays]

    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]

    def cell(ij):
        i, j = ij
        return rtdl_sum(graphs[i], graphs[j], options).value

    if parallelism > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(cell, pairs))
    else:
        results = [cell(ij) for ij in pairs]

    directed = np.zeros((m, m))
    for (i, j), v in zip(pairs, results):
        directed[i, j] = v
    if policy == "ab":
        values = directed
    elif policy == "ba":
        values = directed.T.copy()
    else:
        values = directed + directed.T
    return ComparisonMatrix(labels, values, policy, None if subsample is None else tuple(subsample), idx)
