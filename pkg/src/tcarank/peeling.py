"""Sequential extraction of coherent groups; whatever is left is the noisy group."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coherence import (ClusterPartition, CoherencyVerdict, coherency_test,
                        crossing_index, partition_by_first_axis)
from .config import PeelConfig
from .errors import NoCoherentPrefix
from .ranks import BordaScale, Profile, borda_scale, reverse_and_nega
from .tca import build_correspondence, factor_scores, residual, run_tca


@dataclass(frozen=True, eq=False)
class GroupCluster:
    alpha: int
    voter_ids: tuple
    verdict: CoherencyVerdict
    beta: tuple       # exact Borda scale of the cluster
    g1: tuple         # item scores of the cluster under the parent axis
    cross: Fraction

    @property
    def size(self):
        return len(self.voter_ids)

    @property
    def delta1(self):
        return self.verdict.sub_delta


@dataclass(frozen=True, eq=False)
class CoherentGroup:
    """Union of the coherent prefix of one first-axis partition."""

    index: int
    clusters: tuple
    J1: tuple
    J2: tuple
    items: tuple
    voter_ids: tuple
    beta: BordaScale
    delta1: Fraction          # size-weighted average over clusters
    delta1_direct: Fraction   # first dispersion of a fresh TCA of the union
    cross: Fraction
    g1: tuple
    partition: ClusterPartition = field(repr=False, default=None)

    @property
    def size(self):
        return len(self.voter_ids)

    @property
    def d1(self):
        return len(self.J1)

    @property
    def d2(self):
        return len(self.J2)

    @property
    def d(self):
        return len(self.items)

    def weights(self):
        return [Fraction(c.size, self.size) for c in self.clusters]


@dataclass(frozen=True, eq=False)
class IterationRecord:
    iteration: int
    n_in: int
    J1: tuple
    J2: tuple
    delta1: Fraction
    ties: int
    method: str
    cluster_sizes: dict
    verdicts: tuple
    outcome: str          # "group", "small", "no-prefix"
    group_size: int = 0

    @property
    def tie_broken(self):
        """True when some TCA call in this iteration had several maximizers."""
        return self.ties > 1 or any(v.sub_axis.ties > 1 for v in self.verdicts)


def _record(it, p, part, verdicts, outcome, size=0):
    ax = part.axis
    return IterationRecord(it, p.n, part.J1, part.J2, ax.delta, ax.ties, ax.method,
                           part.sizes(), tuple(verdicts), outcome, size)


def _axis_at(p, u):
    return factor_scores(residual(build_correspondence(reverse_and_nega(p))), u)


def _group(index, p, part, verdicts, config):
    ax = part.axis
    b = part.bounds
    clusters, ids = [], []
    for v in verdicts:
        c = part.cluster(v.alpha)
        sub = p.subset(c.voter_ids)
        g1 = _axis_at(sub, ax.u).g
        cross = crossing_index(v.sub_delta, b.d1, b.d2, b.d)
        clusters.append(GroupCluster(v.alpha, c.voter_ids, v, borda_scale(sub).beta, g1, cross))
        ids.extend(c.voter_ids)
    union = p.subset(ids)
    n = len(ids)
    delta = sum((Fraction(c.size, n) * c.delta1 for c in clusters), Fraction(0))
    direct = run_tca(union, 1, config.engine, config.restarts, config.enum_limit).first.delta
    g1 = _axis_at(union, ax.u).g
    return CoherentGroup(index, tuple(clusters), part.J1, part.J2, p.items,
                         tuple(int(i) for i in union.row_ids), borda_scale(union),
                         delta, direct, crossing_index(delta, b.d1, b.d2, b.d), g1, part)


def extract_coherent_group(p: Profile, config: PeelConfig = PeelConfig(), index=1):
    """One peeling step; returns ``(group, remainder, record)``.

    Nonempty clusters are taken in lattice order while they are coherent;
    empty slots are skipped and the first incoherent cluster ends the group.
    Raises :class:`NoCoherentPrefix` (carrying the iteration record) when the
    first nonempty cluster already fails.  ``remainder`` is None once every
    voter has been taken.
    """
    ax = run_tca(p, 1, config.engine, config.restarts, config.enum_limit).first
    part = partition_by_first_axis(p, ax)
    verdicts = []
    for alpha in part.alphas:
        v = coherency_test(p, part, alpha, config.engine, config.restarts, config.enum_limit)
        verdicts.append(v)
        if not v.coherent:
            break
    good = [v for v in verdicts if v.coherent]
    if not good:
        rec = _record(index, p, part, verdicts, "no-prefix")
        raise NoCoherentPrefix("first nonempty lattice cluster is incoherent", rec)
    g = _group(index, p, part, good, config)
    rec = _record(index, p, part, verdicts, "group", g.size)
    remainder = p.without(g.voter_ids) if g.size < p.n else None
    return g, remainder, rec


@dataclass(frozen=True, eq=False)
class PeelResult:
    groups: tuple
    noisy: tuple
    trace: tuple
    n: int

    def all_ids(self):
        out = [i for g in self.groups for i in g.voter_ids]
        return out + list(self.noisy)

    @property
    def tie_broken(self):
        return any(r.tie_broken for r in self.trace)


def peel(p: Profile, config: PeelConfig = PeelConfig()) -> PeelResult:
    """Peel coherent groups until one falls below ``min_group_frac * n``."""
    n0 = p.n
    floor = config.min_group_frac * n0
    groups, trace, noisy = [], [], []
    rest = p
    for _ in range(config.max_iters):
        try:
            g, remainder, rec = extract_coherent_group(rest, config, len(groups) + 1)
        except NoCoherentPrefix as e:
            trace.append(e.record)
            break
        if g.size < floor:
            trace.append(IterationRecord(**{**rec.__dict__, "outcome": "small"}))
            break
        groups.append(g)
        trace.append(rec)
        rest = remainder
        if rest is None:
            break
    if rest is not None:
        noisy = [int(i) for i in rest.row_ids]
    return PeelResult(tuple(groups), tuple(noisy), tuple(trace), n0)


@dataclass(frozen=True)
class GroupSummary:
    index: int
    size: int
    share: float
    items: tuple
    beta: tuple
    stderr: tuple
    g1: tuple
    buckets: tuple      # tuples of item indices, best bucket first
    delta1: Fraction
    cross: Fraction
    roster: tuple       # (alpha, size, delta1, T, cross)


def bucket_ranking(beta, stderr, z=1.96):
    """Merge items whose ``beta +- z*stderr`` intervals overlap, transitively."""
    beta = np.asarray([float(b) for b in beta])
    half = z * np.asarray(stderr, dtype=float)
    lo, hi = beta - half, beta + half
    d = len(beta)
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            if lo[i] <= hi[j] and lo[j] <= hi[i]:
                parent[find(i)] = find(j)
    comps = {}
    for i in range(d):
        comps.setdefault(find(i), []).append(i)
    buckets = [sorted(c, key=lambda j: (-beta[j], j)) for c in comps.values()]
    buckets.sort(key=lambda c: -beta[c].mean())
    return tuple(tuple(c) for c in buckets)


def group_summary(g: CoherentGroup, n_total=None, z=1.96) -> GroupSummary:
    d1 = g.d1
    roster = tuple((c.alpha, c.size, c.delta1, c.alpha - 1 + d1 * (d1 - 1) // 2, c.cross)
                   for c in g.clusters)
    n_total = n_total or g.size
    return GroupSummary(g.index, g.size, g.size / n_total, g.items, g.beta.beta,
                        tuple(float(s) for s in g.beta.stderr), g.g1,
                        bucket_ranking(g.beta.beta, g.beta.stderr, z),
                        g.delta1, g.cross, roster)
