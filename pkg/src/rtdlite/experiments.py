"""Trend reproduction on the synthetic suites and scaling benchmarks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import kendalltau

from .rtdl import RtdlOptions, pairwise_distances, rtdl_sum
from .synth import clusters, gaussian_cloud, rings

# baseline count, variant counts, default point count
SUITES = {
    "clusters": (1, tuple(range(1, 13)), 300),
    "rings": (5, tuple(range(1, 6)), 500),
}
ORIENTATIONS = ("sym", "ab", "ba")
BENCH_SIZES = (500, 1000, 2000, 4000)


def _cloud(kind: str, n_points: int, count: int, seed: int) -> np.ndarray:
    if kind == "clusters":
        return clusters(n_points, count, seed)
    return rings(n_points, count, seed)


def _tau(x, y) -> float:
    return float(kendalltau(x, y).statistic)


@dataclass
class TrendReport:
    """RTDL of baseline-vs-variant per seed, in every orientation.

    ``values[o]`` has one row per seed and one column per variant count.
    ``taus[o]`` is the per-seed Kendall tau against the variant count over
    the variants that differ from the baseline; ``taus_with_self`` keeps the
    identical comparison (value 0) in.
    """

    kind: str
    n_points: int
    baseline: int
    variants: tuple
    seeds: tuple
    normalize: bool
    values: dict = field(default_factory=dict)
    taus: dict = field(default_factory=dict)
    taus_with_self: dict = field(default_factory=dict)

    @property
    def compared(self) -> list:
        return [k for k in self.variants if k != self.baseline]

    def mean_tau(self, orientation: str = "sym") -> float:
        return float(np.mean(self.taus[orientation]))

    def tau_of_mean(self, orientation: str = "sym") -> float:
        cols = [i for i, k in enumerate(self.variants) if k != self.baseline]
        curve = self.values[orientation].mean(axis=0)[cols]
        return _tau(self.compared, curve)

    def summary_lines(self) -> list:
        lines = [
            f"suite={self.kind} n={self.n_points} baseline={self.baseline} "
            f"variants={self.compared} seeds={len(self.seeds)} normalize={self.normalize}"
        ]
        for o in ORIENTATIONS:
            lines.append(
                f"orientation={o} mean_tau={self.mean_tau(o):+.4f} "
                f"tau_of_mean={self.tau_of_mean(o):+.4f} "
                f"mean_tau_with_self={float(np.mean(self.taus_with_self[o])):+.4f}"
            )
        return lines

    def to_csv(self, fh) -> None:
        fh.write("orientation,seed," + ",".join(f"k{k}" for k in self.variants) + ",tau\n")
        for o in ORIENTATIONS:
            for s, row, tau in zip(self.seeds, self.values[o], self.taus[o]):
                fh.write(f"{o},{s}," + ",".join(repr(float(v)) for v in row) + f",{tau!r}\n")


def run_trend(
    kind: str,
    seeds=range(10),
    n_points: int | None = None,
    normalize: bool = True,
    quantile: float = 0.9,
) -> TrendReport:
    """Compare the suite's baseline cloud against each variant for every seed.

    Orientation ``"ab"`` is RTDL(baseline, variant), ``"ba"`` the reverse,
    ``"sym"`` their sum.
    """
    if kind not in SUITES:
        raise ValueError(f"unknown suite {kind!r}; expected one of {tuple(SUITES)}")
    baseline, variants, default_n = SUITES[kind]
    n_points = n_points or default_n
    seeds = tuple(int(s) for s in seeds)
    options = RtdlOptions(normalize=normalize, quantile=quantile)
    report = TrendReport(kind, n_points, baseline, variants, seeds, normalize)
    rows = {o: [] for o in ORIENTATIONS}
    for seed in seeds:
        base = pairwise_distances(_cloud(kind, n_points, baseline, seed))
        row = {o: [] for o in ORIENTATIONS}
        for k in variants:
            var = pairwise_distances(_cloud(kind, n_points, k, seed))
            ab = rtdl_sum(base, var, options).value
            ba = rtdl_sum(var, base, options).value
            row["ab"].append(ab)
            row["ba"].append(ba)
            row["sym"].append(ab + ba)
        for o in ORIENTATIONS:
            rows[o].append(row[o])
    compared_cols = [i for i, k in enumerate(variants) if k != baseline]
    compared = [variants[i] for i in compared_cols]
    for o in ORIENTATIONS:
        vals = np.array(rows[o])
        report.values[o] = vals
        report.taus[o] = [_tau(compared, r[compared_cols]) for r in vals]
        report.taus_with_self[o] = [_tau(list(variants), r) for r in vals]
    return report


@dataclass
class BenchReport:
    sizes: tuple
    seconds: tuple
    slope: float
    dimension: int

    def to_csv(self, fh) -> None:
        fh.write("n,seconds\n")
        for n, t in zip(self.sizes, self.seconds):
            fh.write(f"{n},{t!r}\n")

    def summary_lines(self) -> list:
        lines = [f"{'n':>6}  {'seconds':>10}"]
        lines += [f"{n:>6}  {t:>10.4f}" for n, t in zip(self.sizes, self.seconds)]
        lines.append(f"loglog_slope={self.slope:.3f}")
        return lines


def fit_loglog_slope(sizes, seconds) -> float:
    slope, _ = np.polyfit(np.log(sizes), np.log(seconds), 1)
    return float(slope)


def run_bench(
    sizes=BENCH_SIZES, dimension: int = 10, seed: int = 0, repeats: int = 3
) -> BenchReport:
    """Best-of-``repeats`` wall time of cloud-to-RTDL for each size.

    The timed region covers the distance matrices, normalization and both
    spanning trees.
    """
    rtdl_sum(np.ones((3, 3)) - np.eye(3), np.ones((3, 3)) - np.eye(3))  # JIT warm-up
    times = []
    for n in sizes:
        p = gaussian_cloud(n, dimension, seed)
        q = gaussian_cloud(n, dimension, seed + 1)
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            rtdl_sum(pairwise_distances(p), pairwise_distances(q))
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    return BenchReport(tuple(sizes), tuple(times), fit_loglog_slope(sizes, times), dimension)
