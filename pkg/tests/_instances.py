"""Random weight-matrix pairs shared by the test modules."""

import numpy as np

MODES = ("uniform", "dupes", "absent", "cloud")


def sym(upper_vals, n):
    w = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    w[iu] = upper_vals
    return w + w.T


def random_matrix(rng, n, mode="uniform"):
    m = n * (n - 1) // 2
    if mode == "dupes":
        return sym(rng.integers(1, 4, m).astype(float), n)
    if mode == "cloud":
        p = rng.standard_normal((n, int(rng.integers(1, 4))))
        return np.linalg.norm(p[:, None] - p[None], axis=-1)
    return sym(rng.uniform(0.0, 1.0, m), n)


def random_pair(rng, n, mode="uniform"):
    """A connected ``a`` and a ``b`` that may lack edges in mode 'absent'."""
    if mode == "absent":
        a = random_matrix(rng, n, "uniform")
        b = random_matrix(rng, n, "uniform")
        iu = np.triu_indices(n, 1)
        drop = rng.random(len(iu[0])) < 0.3
        vals = b[iu]
        vals[drop] = np.inf
        return a, sym(vals, n)
    return random_matrix(rng, n, mode), random_matrix(rng, n, mode)


def instances(seed, count, n_min=2, n_max=32):
    """Yield ``(a, b, mode)`` cycling through all modes."""
    rng = np.random.default_rng(seed)
    for k in range(count):
        mode = MODES[k % len(MODES)]
        n = int(rng.integers(n_min, n_max + 1))
        a, b = random_pair(rng, n, mode)
        yield a, b, mode


def tie_free_pair(rng, n):
    """Uniform pair with distinct weights within and across the two graphs."""
    while True:
        a, b = random_pair(rng, n, "uniform")
        iu = np.triu_indices(n, 1)
        vals = np.concatenate([a[iu], b[iu]])
        if np.unique(vals).size == vals.size:
            return a, b


def permute(w, perm):
    return w[np.ix_(perm, perm)]
