import io

import numpy as np
import pytest

from rtdlite.synth import SynthSpec, clusters, generate, read_cloud_csv, ring_radii, rings, write_cloud_csv


def test_single_ring_unit_radius():
    pts = rings(200, 1, seed=3)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_ring_radii_round_robin(k):
    pts = rings(500, k, seed=0)
    expected = ring_radii(k)[np.arange(500) % k]
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - expected)) <= 1e-12
    assert ring_radii(k).min() == (0.5 if k > 1 else 1.0)
    assert ring_radii(k).max() == (1.5 if k > 1 else 1.0)


def test_rings_share_angles():
    angles = [np.arctan2(*rings(100, k, 7).T[::-1]) for k in range(1, 6)]
    for a in angles[1:]:
        np.testing.assert_allclose(a, angles[0], atol=1e-12)


def test_single_cluster_untranslated():
    base = np.random.Generator(np.random.Philox(5)).standard_normal((300, 2))
    np.testing.assert_array_equal(clusters(300, 1, 5), base)


@pytest.mark.parametrize("k", [2, 5, 12])
def test_clusters_translate_blocks(k):
    base = clusters(300, 1, 9)
    pts = clusters(300, k, 9)
    shift = pts - base
    for j, block in enumerate(np.array_split(np.arange(300), k)):
        angle = 2 * np.pi * j / k
        expected = 10 * np.array([np.cos(angle), np.sin(angle)])
        np.testing.assert_allclose(shift[block], np.broadcast_to(expected, shift[block].shape), atol=1e-12)


def test_deterministic():
    for spec in (
        SynthSpec("rings", 50, seed=11, ring_count=3),
        SynthSpec("clusters", 50, seed=11, cluster_count=4),
        SynthSpec("gaussian_cloud", 50, seed=11, dimension=6),
    ):
        np.testing.assert_array_equal(generate(spec), generate(spec))
    assert not np.array_equal(
        generate(SynthSpec("gaussian_cloud", 20, seed=1)), generate(SynthSpec("gaussian_cloud", 20, seed=2))
    )


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="spheres", n_points=10),
        dict(kind="rings", n_points=10, ring_count=6),
        dict(kind="rings", n_points=10, ring_count=0),
        dict(kind="clusters", n_points=10, cluster_count=13),
        dict(kind="clusters", n_points=3, cluster_count=4),
        dict(kind="gaussian_cloud", n_points=1),
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        SynthSpec(**kwargs)


def test_cloud_csv_round_trip(tmp_path):
    spec = SynthSpec("clusters", 30, seed=4, cluster_count=3)
    pts = generate(spec)
    path = tmp_path / "c.csv"
    with open(path, "w") as fh:
        write_cloud_csv(pts, fh, header=spec.header())
    text = path.read_text()
    assert text.startswith("# kind=clusters seed=4 n=30")
    np.testing.assert_array_equal(read_cloud_csv(path), pts)
