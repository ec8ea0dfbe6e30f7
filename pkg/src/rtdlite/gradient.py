"""Subgradients of RTDL with respect to edge weights and point coordinates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sps

from .errors import DimensionMismatchError
from .forest import mst_prim
from .graph_core import format_float
from .rtdl import DEFAULT_OPTIONS, RtdlOptions, RtdlValue, _check_connected, _sum_value, prepare


@dataclass(frozen=True)
class SubgradientPair:
    """Sparse symmetric matrices of dRTDL/da and dRTDL/db.

    ``frozen_divisors`` are the normalization divisors that were treated as
    constants.
    """

    d_a: sps.csr_array
    d_b: sps.csr_array
    frozen_divisors: tuple

    @staticmethod
    def entries(m) -> list:
        """Nonzero ``(i, j, value)`` triples with ``i < j``."""
        coo = sps.triu(m, k=1).tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order]


def _symmetric(n, rows, cols, vals):
    rows, cols, vals = np.asarray(rows), np.asarray(cols), np.asarray(vals, dtype=np.float64)
    m = sps.coo_array(
        (np.concatenate([vals, vals]), (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(n, n),
    ).tocsr()
    m.eliminate_zeros()
    return m


def rtdl_subgradient(a, b, options: RtdlOptions = DEFAULT_OPTIONS):
    """RTDL together with a subgradient in both weight matrices.

    Quantile divisors are held constant. At an edge where the normalized
    weights tie, the minimum is attributed to ``a``.
    """
    prep = prepare(a, b, options)
    t_a = mst_prim(prep.a)
    _check_connected(t_a, "A", options)
    t_c = mst_prim(prep.c)
    _check_connected(t_c, "C", options)
    n = prep.a.n
    q_a, q_b = prep.record.q_a, prep.record.q_b

    grad_a: dict = {}
    rows_b, cols_b, vals_b = [], [], []
    for e in t_a.edges:
        grad_a[(e.u, e.v)] = grad_a.get((e.u, e.v), 0.0) + 1.0
    for e in t_c.edges:
        if prep.a.w[e.u, e.v] <= prep.b.w[e.u, e.v]:
            grad_a[(e.u, e.v)] = grad_a.get((e.u, e.v), 0.0) - 1.0
        else:
            rows_b.append(e.u)
            cols_b.append(e.v)
            vals_b.append(-1.0 / q_b)

    keys = list(grad_a)
    d_a = _symmetric(
        n,
        [k[0] for k in keys],
        [k[1] for k in keys],
        [grad_a[k] / q_a for k in keys],
    )
    d_b = _symmetric(n, rows_b, cols_b, vals_b)
    value: RtdlValue = _sum_value(t_a, t_c)
    return value, SubgradientPair(d_a, d_b, (q_a, q_b))


def _distance_grad(points, d):
    """Gradient of ``sum_ij d[i, j] * |p_i - p_j|`` over the stored entries.

    Every undirected edge is stored twice in ``d``, once per endpoint, so each
    stored entry pushes only on its row point.
    """
    p = np.asarray(points, dtype=np.float64)
    coo = sps.coo_array(d)
    rows, cols, vals = coo.row, coo.col, coo.data
    diff = p[rows] - p[cols]
    dist = np.linalg.norm(diff, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(dist[:, None] > 0, diff / dist[:, None], 0.0)
    grad = np.zeros_like(p)
    np.add.at(grad, rows, vals[:, None] * unit)
    return grad


def chain_to_points(sg: SubgradientPair, p, q, metric: str = "euclidean"):
    """Push weight subgradients back to point coordinates.

    Only the Euclidean metric is supported. Coincident points contribute a
    zero vector.
    """
    if metric != "euclidean":
        raise ValueError(f"chain rule only implemented for euclidean distances, not {metric!r}")
    p, q = np.asarray(p, dtype=np.float64), np.asarray(q, dtype=np.float64)
    if p.ndim != 2 or q.ndim != 2:
        raise DimensionMismatchError("point sets must be 2-D arrays")
    if p.shape[0] != sg.d_a.shape[0] or q.shape[0] != sg.d_b.shape[0]:
        raise DimensionMismatchError(
            f"point counts {p.shape[0]}, {q.shape[0]} do not match gradient size {sg.d_a.shape[0]}"
        )
    return _distance_grad(p, sg.d_a), _distance_grad(q, sg.d_b)


def write_sparse_csv(m, fh) -> None:
    """Write ``i,j,value`` lines for the nonzero upper-triangle entries."""
    for i, j, v in SubgradientPair.entries(m):
        fh.write(f"{i},{j},{format_float(v)}\n")


def gradcheck(
    n_instances: int = 50,
    n_points: int = 8,
    dims: tuple = (2, 3),
    seed: int = 0,
    eps: float = 1e-6,
    min_gap: float = 1e-3,
    max_tries: int = 10_000,
):
    """Compare point gradients with central finite differences of ``rtdl_sum``.

    Instances are random Gaussian clouds whose normalized pairwise weights
    (of both clouds together) are separated by more than ``min_gap``, so no
    perturbation of size ``eps`` crosses a tie. Divisors are frozen at their
    unperturbed values. Returns the per-instance relative errors
    ``max|fd - g| / max|g|``.
    """
    from .rtdl import pairwise_distances, rtdl_sum
    from .synth import make_rng

    rng = make_rng(seed)
    errors = []
    tries = 0
    while len(errors) < n_instances:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"could not draw {n_instances} tie-free instances")
        p = rng.standard_normal((n_points, dims[0]))
        q = rng.standard_normal((n_points, dims[1]))
        a, b = pairwise_distances(p), pairwise_distances(q)
        value, sg = rtdl_subgradient(a, b, options=RtdlOptions(normalize=True))
        q_a, q_b = sg.frozen_divisors
        iu = np.triu_indices(n_points, 1)
        weights = np.sort(np.concatenate([a.w[iu] / q_a, b.w[iu] / q_b]))
        if np.min(np.diff(weights)) <= min_gap:
            continue
        frozen = RtdlOptions(normalize=True, divisors=(q_a, q_b))
        g_p, g_q = chain_to_points(sg, p, q)

        def f(pp, qq):
            return rtdl_sum(pairwise_distances(pp), pairwise_distances(qq), frozen).value

        fd_p, fd_q = np.zeros_like(p), np.zeros_like(q)
        for pts, fd, first in ((p, fd_p, True), (q, fd_q, False)):
            for idx in np.ndindex(pts.shape):
                plus, minus = pts.copy(), pts.copy()
                plus[idx] += eps
                minus[idx] -= eps
                if first:
                    fd[idx] = (f(plus, q) - f(minus, q)) / (2 * eps)
                else:
                    fd[idx] = (f(p, plus) - f(p, minus)) / (2 * eps)
        g = np.concatenate([g_p.ravel(), g_q.ravel()])
        fd = np.concatenate([fd_p.ravel(), fd_q.ravel()])
        denom = max(np.max(np.abs(g)), np.finfo(float).tiny)
        errors.append(float(np.max(np.abs(fd - g)) / denom))
    return errors
