import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from rtdlite import RtdlOptions, rtdl_barcode
from rtdlite.oracle import (
    all_spanning_trees,
    brute_force_mst_weight,
    components_at,
    components_at_bfs,
    ker_profile,
    probe_thresholds,
)

from _instances import instances, random_matrix, sym


def test_components_extremes():
    w = random_matrix(np.random.default_rng(0), 7)
    assert components_at(w, -1.0) == 7
    assert components_at(w, w.max()) == 1


def test_components_tri(tri):
    a, _ = tri
    assert components_at(a, 1.5) == 2
    assert components_at_bfs(a, 1.5) == 2


def test_counters_agree_with_each_other_and_scipy():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(2, 15))
        w = random_matrix(rng, n, "dupes")
        for alpha in probe_thresholds(w[np.triu_indices(n, 1)]):
            adj = (w <= alpha) & ~np.eye(n, dtype=bool)
            expected = connected_components(adj, directed=False)[0]
            assert components_at(w, alpha) == components_at_bfs(w, alpha) == expected


def test_probes():
    probes = probe_thresholds([1.0, 2.0, 2.0, np.inf])
    assert list(probes) == [0.0, 1.0, 1.5, 2.0]


def test_profile_identical_zero():
    w = random_matrix(np.random.default_rng(2), 9)
    assert not ker_profile(w, w).ker_dims.any()


def test_profile_tri(tri):
    a, b = tri
    prof = ker_profile(a, b, normalize=False)
    k = list(prof.thresholds).index(1.5)
    assert prof.ker_dims[k] == 1
    bc = rtdl_barcode(a, b, RtdlOptions(normalize=False))
    assert bc.count_containing(1.5) == 1


@pytest.mark.filterwarnings("ignore::rtdlite.graph_core.DegenerateScaleWarning")
@pytest.mark.parametrize("normalize", [True, False])
def test_profile_matches_barcode(normalize):
    opts = RtdlOptions(normalize=normalize)
    for a, b, _ in instances(77, 60, n_max=12):
        prof = ker_profile(a, b, normalize=normalize, counter=components_at_bfs)
        bc = rtdl_barcode(a, b, opts)
        assert (prof.ker_dims >= 0).all()
        counts = [bc.count_containing(t) for t in prof.thresholds]
        assert counts == prof.ker_dims.tolist()
        # past the heaviest C edge C is connected, so the kernel is what A still lacks
        assert prof.components_c[-1] == 1
        assert prof.ker_dims[-1] == prof.components_a[-1] - 1
        assert bc.count_containing(max(iv.death for iv in bc.intervals)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_prufer_enumerates_cayley(n):
    trees = [tuple(sorted(t)) for t in all_spanning_trees(n)]
    assert len(trees) == len(set(trees)) == n ** (n - 2)
    for t in trees:
        assert len(t) == n - 1
        adj = np.zeros((n, n), dtype=bool)
        for u, v in t:
            adj[u, v] = adj[v, u] = True
        assert connected_components(adj, directed=False)[0] == 1


def test_brute_force_examples():
    assert brute_force_mst_weight(sym(np.array([1.0, 2.0, 3.0]), 3)) == 3.0
    assert brute_force_mst_weight(np.ones((4, 4)) - np.eye(4)) == 3.0


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_mst_weight(np.ones((7, 7)) - np.eye(7))
    with pytest.raises(ValueError):
        brute_force_mst_weight(sym(np.array([1.0, np.inf, np.inf]), 3))
