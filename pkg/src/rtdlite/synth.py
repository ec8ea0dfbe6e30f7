"""Deterministic synthetic point clouds: rings, clusters and Gaussian blobs.

Every generator draws from ``numpy.random.Philox`` (a counter-based 64-bit
generator) seeded with SynthSpec.seed, so a seed pins the output exactly.
Variants of one kind that share a seed and ``n_points`` are built from the
same base sample, which keeps row ``i`` in correspondence across variants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KINDS = ("rings", "clusters", "gaussian_cloud")
RING_RADII = (0.5, 1.5)
CLUSTER_RADIUS = 10.0


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class SynthSpec:
    kind: str
    n_points: int
    seed: int = 0
    ring_count: int = 1
    cluster_count: int = 1
    dimension: int = 2

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be at least 2, got {self.n_points}")
        if self.kind == "rings" and not 1 <= self.ring_count <= min(5, self.n_points):
            raise ValueError(f"ring_count must be in 1..5 and <= n_points, got {self.ring_count}")
        if self.kind == "clusters" and not 1 <= self.cluster_count <= min(12, self.n_points):
            raise ValueError(
                f"cluster_count must be in 1..12 and <= n_points, got {self.cluster_count}"
            )
        if self.kind == "gaussian_cloud" and self.dimension < 1:
            raise ValueError(f"dimension must be positive, got {self.dimension}")

    def header(self) -> str:
        extra = {
            "rings": f"rings={self.ring_count}",
            "clusters": f"clusters={self.cluster_count}",
            "gaussian_cloud": f"dimension={self.dimension}",
        }[self.kind]
        return f"# kind={self.kind} seed={self.seed} n={self.n_points} {extra}"


def ring_radii(ring_count: int) -> np.ndarray:
    if ring_count == 1:
        return np.array([1.0])
    return np.linspace(*RING_RADII, ring_count)


def rings(n_points: int, ring_count: int, seed: int = 0) -> np.ndarray:
    """Uniform angles; point ``i`` sits on ring ``i % ring_count``."""
    theta = make_rng(seed).uniform(0.0, 2 * np.pi, n_points)
    radius = ring_radii(ring_count)[np.arange(n_points) % ring_count]
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])


def clusters(n_points: int, cluster_count: int, seed: int = 0) -> np.ndarray:
    """Standard normal sample cut into contiguous blocks moved onto a circle.

    Block ``j`` of ``k`` is shifted by ``10 * (cos 2pi j/k, sin 2pi j/k)``;
    a single cluster is left in place.
    """
    base = make_rng(seed).standard_normal((n_points, 2))
    if cluster_count == 1:
        return base
    out = base.copy()
    for j, block in enumerate(np.array_split(np.arange(n_points), cluster_count)):
        angle = 2 * np.pi * j / cluster_count
        out[block] += CLUSTER_RADIUS * np.array([np.cos(angle), np.sin(angle)])
    return out


def gaussian_cloud(n_points: int, dimension: int, seed: int = 0) -> np.ndarray:
    return make_rng(seed).standard_normal((n_points, dimension))


def generate(spec: SynthSpec) -> np.ndarray:
    if spec.kind == "rings":
        return rings(spec.n_points, spec.ring_count, spec.seed)
    if spec.kind == "clusters":
        return clusters(spec.n_points, spec.cluster_count, spec.seed)
    return gaussian_cloud(spec.n_points, spec.dimension, spec.seed)


def write_cloud_csv(points, fh, header: str = "") -> None:
    if header:
        fh.write(header.rstrip("\n") + "\n")
    for row in np.asarray(points, dtype=np.float64):
        fh.write(",".join(repr(float(x)) for x in row) + "\n")


def read_cloud_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=np.float64)
