"""Synthetic profiles with planted coherent clusters.

A planted voter of cluster ``alpha`` is built in two steps: pick the set of
Borda scores its ``J1`` items receive (uniformly among the ``d1``-subsets of
``{0..d-1}`` summing to ``T = alpha - 1 + d1(d1-1)/2``), then hand those
scores to the ``J1`` items and the remaining scores to ``J2`` in uniformly
random orders.  A small cluster drawn this way can happen to have a better
split of its own than the planted one, so each cluster is redrawn (from a
derived seed) until it passes the coherency test under the planted split.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .coherence import coherency_test, partition_by_first_axis
from .errors import InfeasibleAlpha, InputError
from .ranks import Profile, reverse_and_nega
from .tca import build_correspondence, factor_scores, residual


@dataclass(frozen=True)
class PlantedCluster:
    alpha: int
    voter_ids: tuple
    T: int
    attempts: int = 1

    @property
    def size(self):
        return len(self.voter_ids)


@dataclass(frozen=True, eq=False)
class SyntheticProfile:
    profile: Profile
    J1: tuple
    J2: tuple
    clusters: tuple
    noise_ids: tuple
    seed: int

    @property
    def planted(self):
        return [(c.alpha, c.size) for c in self.clusters]


@lru_cache(maxsize=256)
def score_sets(d, d1, T):
    """All ``d1``-subsets of ``{0..d-1}`` with sum ``T``."""
    return tuple(c for c in combinations(range(d), d1) if sum(c) == T)


def _draw(rng, size, J1, J2, sets, within):
    d = len(J1) + len(J2)
    rows = np.empty((size, d), dtype=np.int64)
    J1, J2 = np.asarray(J1), np.asarray(J2)
    for k in range(size):
        s1 = np.asarray(sets[rng.integers(len(sets))])
        s2 = np.setdiff1d(np.arange(d), s1)
        if within == "uniform":
            s1, s2 = rng.permutation(s1), rng.permutation(s2)
        rows[k, J1] = s1
        rows[k, J2] = s2
    return rows


def _coherent(rows, items, J1, alpha):
    p = Profile(items, rows)
    u = np.ones(len(items), dtype=np.int64)
    u[list(J1)] = -1
    ax = factor_scores(residual(build_correspondence(reverse_and_nega(p))), u)
    if ax.J1 != tuple(sorted(J1)):
        return False
    part = partition_by_first_axis(p, ax)
    if part.cluster(alpha) is None or len(part.clusters) != 1:
        return False
    return coherency_test(p, part, alpha).coherent


def uniform_noise(rng, size, d):
    """``size`` uniformly random ballots as Borda rows."""
    if size == 0:
        return np.empty((0, d), dtype=np.int64)
    return np.argsort(rng.random((size, d)), axis=1).astype(np.int64)


def generate_synthetic(d1, d2, cluster_spec, seed=0, J1=None, noise=0,
                       within="uniform", ensure_coherent=True, max_tries=200,
                       items=None) -> SyntheticProfile:
    """Profile made of planted clusters ``[(alpha, size), ...]`` plus noise voters.

    ``within="fixed"`` keeps each block's scores in ascending item order,
    so only the crossing pattern is random.
    """
    d = d1 + d2
    if d1 < 1 or d2 < 1:
        raise InputError("d1 and d2 must be positive")
    if within not in ("uniform", "fixed"):
        raise InputError(f"unknown within-block mode {within!r}")
    J1 = tuple(range(d1)) if J1 is None else tuple(sorted(int(j) for j in J1))
    if len(J1) != d1 or not set(J1) <= set(range(d)):
        raise InputError("J1 must list d1 distinct item indices")
    J2 = tuple(j for j in range(d) if j not in J1)
    items = tuple(items) if items is not None else tuple(f"j{k + 1}" for k in range(d))
    base = d1 * (d1 - 1) // 2
    blocks, planted, start = [], [], 0
    for k, (alpha, size) in enumerate(cluster_spec):
        if not 1 <= alpha <= d1 * d2 + 1:
            raise InfeasibleAlpha(f"alpha={alpha} outside 1..{d1 * d2 + 1}")
        if size < 1:
            raise InputError("cluster sizes must be positive")
        T = alpha - 1 + base
        if ensure_coherent and 2 * d1 * d2 - 4 * (alpha - 1) <= 0:
            raise InfeasibleAlpha(f"alpha={alpha} has a non-positive lattice score; "
                                  "no cluster there can be coherent")
        sets = score_sets(d, d1, T)
        if not sets:
            raise InfeasibleAlpha(f"no score set of size {d1} sums to {T}")
        for attempt in range(1, max_tries + 1):
            rng = np.random.default_rng([seed, k, attempt])
            rows = _draw(rng, size, J1, J2, sets, within)
            if not ensure_coherent or _coherent(rows, items, J1, alpha):
                break
        else:
            raise InfeasibleAlpha(f"could not draw a coherent cluster alpha={alpha} "
                                  f"of size {size} in {max_tries} tries")
        blocks.append(rows)
        planted.append(PlantedCluster(alpha, tuple(range(start, start + size)), T, attempt))
        start += size
    nrng = np.random.default_rng([seed, len(cluster_spec), 0])
    blocks.append(uniform_noise(nrng, noise, d))
    noise_ids = tuple(range(start, start + noise))
    rows = np.vstack(blocks) if blocks else np.empty((0, d), dtype=np.int64)
    return SyntheticProfile(Profile(items, rows), J1, J2, tuple(planted), noise_ids, seed)
