"""Dense weight matrices, quantile normalization and the auxiliary min-graph."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatchError, InvalidMatrixError

DEFAULT_QUANTILE = 0.9
SYMMETRY_RTOL = 1e-12


class DegenerateScaleWarning(UserWarning):
    """No usable edge weights to normalize by; the divisor fell back to 1."""


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric n x n matrix of nonnegative edge weights.

    The diagonal is zero. ``inf`` marks an absent edge. The backing array is
    read-only; build new matrices instead of mutating.
    """

    w: np.ndarray

    def __post_init__(self):
        self.w.flags.writeable = False

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.w if dtype is None else self.w.astype(dtype)

    def __repr__(self):
        return f"WeightMatrix(n={self.n})"


@dataclass(frozen=True)
class NormalizationRecord:
    quantile_level: float = DEFAULT_QUANTILE
    q_a: float = 1.0
    q_b: float = 1.0
    enabled: bool = True

    def to_dict(self) -> dict:
        return {
            "level": self.quantile_level,
            "q_a": self.q_a,
            "q_b": self.q_b,
            "enabled": self.enabled,
        }


def validate(w, copy: bool = True) -> WeightMatrix:
    """Check a raw square matrix and wrap it as a :class:`WeightMatrix`.

    Nothing is repaired: asymmetry, negative or NaN weights and a nonzero
    diagonal are all rejected. Entries that agree with their transpose only
    up to a relative 1e-12 are accepted and the upper triangle is mirrored so
    the stored matrix is exactly symmetric.
    """
    if isinstance(w, WeightMatrix):
        return w
    arr = np.array(w, dtype=np.float64, copy=copy)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError(f"weight matrix must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n < 2:
        raise InvalidMatrixError(f"need at least 2 vertices, got {n}")
    if np.isnan(arr).any():
        raise InvalidMatrixError("weight matrix contains NaN")
    if (arr < 0).any():
        raise InvalidMatrixError("weight matrix contains negative weights")
    if np.any(np.diagonal(arr) != 0):
        raise InvalidMatrixError("diagonal entries must be zero")
    if not np.array_equal(arr, arr.T):
        both_inf = np.isinf(arr) & np.isinf(arr.T)
        with np.errstate(invalid="ignore"):
            diff = np.abs(arr - arr.T)
        scale = np.maximum(arr, arr.T)
        ok = both_inf | (np.isfinite(diff) & (diff <= SYMMETRY_RTOL * scale))
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            raise InvalidMatrixError(
                f"weight matrix is asymmetric at ({i}, {j}): {arr[i, j]!r} vs {arr[j, i]!r}"
            )
        lower = np.tril_indices(n, -1)
        arr[lower] = arr.T[lower]
    return WeightMatrix(arr)


def upper_weights(a: WeightMatrix) -> np.ndarray:
    """Strict upper-triangle entries, one per undirected edge."""
    return a.w[np.triu_indices(a.n, 1)]


def quantile_divisor(a: WeightMatrix, level: float = DEFAULT_QUANTILE) -> tuple[float, bool]:
    """Linear-interpolation quantile of the finite edge weights.

    Returns ``(divisor, degenerate)``. When the quantile is zero but some
    weight is positive the largest finite weight is used, which keeps the
    divisor proportional to the input scale. ``degenerate`` is true when no
    positive weight exists and 1.0 is returned instead.
    """
    if not 0.0 < level <= 1.0:
        raise ValueError(f"quantile level must be in (0, 1], got {level}")
    vals = upper_weights(a)
    vals = vals[np.isfinite(vals)]
    if vals.size == 0:
        return 1.0, True
    q = float(np.quantile(vals, level, method="linear"))
    if q > 0.0:
        return q, False
    top = float(vals.max())
    if top > 0.0:
        return top, False
    return 1.0, True


def normalize(a: WeightMatrix, level: float = DEFAULT_QUANTILE) -> tuple[WeightMatrix, float]:
    """Divide ``a`` by the quantile of its finite edge weights at ``level``.

    Emits :class:`DegenerateScaleWarning` and uses a divisor of 1 when all
    finite weights are zero (or none exist).
    """
    a = validate(a)
    divisor, degenerate = quantile_divisor(a, level)
    if degenerate:
        warnings.warn(
            "no positive finite edge weights to normalize by; using divisor 1",
            DegenerateScaleWarning,
            stacklevel=2,
        )
        return a, 1.0
    return scale(a, divisor), divisor


def scale(a: WeightMatrix, divisor: float) -> WeightMatrix:
    """Return ``a / divisor`` without re-validating."""
    if not divisor > 0.0 or not np.isfinite(divisor):
        raise ValueError(f"divisor must be positive and finite, got {divisor}")
    if divisor == 1.0:
        return a
    return WeightMatrix(a.w / divisor)


def auxiliary_min(a: WeightMatrix, b: WeightMatrix) -> WeightMatrix:
    """Element-wise minimum of two weight matrices (the auxiliary graph)."""
    a, b = validate(a), validate(b)
    if a.n != b.n:
        raise DimensionMismatchError(f"vertex counts differ: {a.n} vs {b.n}")
    return WeightMatrix(np.minimum(a.w, b.w))


def read_matrix_csv(path) -> WeightMatrix:
    """Read a dense matrix CSV. ``inf`` (any case) encodes an absent edge."""
    arr = np.loadtxt(Path(path), delimiter=",", comments="#", ndmin=2, dtype=np.float64)
    return validate(arr, copy=False)


def format_float(x: float) -> str:
    return "inf" if x == np.inf else repr(float(x))


def write_matrix_csv(a, path) -> None:
    w = np.asarray(a)
    with open(path, "w") as fh:
        for row in w:
            fh.write(",".join(format_float(x) for x in row))
            fh.write("\n")
