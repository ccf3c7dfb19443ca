"""First-axis cluster lattice, coherency verdicts and crossing indices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptyCluster, InputError, OffLattice, OutOfRange
from .ranks import Profile
from .tca import DEFAULT_ENUM_LIMIT, RestartPolicy, TcaAxis, run_tca


@dataclass(frozen=True)
class Theorem1Bounds:
    d1: int
    d2: int

    @property
    def d(self):
        return self.d1 + self.d2

    @property
    def max_clusters(self):
        return self.d1 * self.d2 + 1

    @property
    def gap(self):
        return Fraction(4, self.d * (self.d - 1))

    @property
    def f_max(self):
        return Fraction(2 * self.d1 * self.d2, self.d * (self.d - 1))

    @property
    def f_min(self):
        return -self.f_max

    def numerator(self, alpha):
        """f1 numerator (over ``d(d-1)``) of lattice slot ``alpha``."""
        return 2 * self.d1 * self.d2 - 4 * (alpha - 1)

    def f_value(self, alpha):
        return Fraction(self.numerator(alpha), self.d * (self.d - 1))

    def alpha_of(self, num):
        """Inverse of :meth:`numerator`; ``None`` when ``num`` is off the lattice."""
        diff = 2 * self.d1 * self.d2 - int(num)
        if diff % 4:
            return None
        alpha = diff // 4 + 1
        return alpha if 1 <= alpha <= self.max_clusters else None


def theorem1_bounds(d1, d2) -> Theorem1Bounds:
    if d1 < 1 or d2 < 1:
        raise InputError("both sides of the item partition must be nonempty")
    return Theorem1Bounds(int(d1), int(d2))


@dataclass(frozen=True, eq=False)
class Cluster:
    alpha: int
    voter_ids: tuple
    f1_numerator: int

    @property
    def size(self):
        return len(self.voter_ids)


@dataclass(frozen=True, eq=False)
class ClusterPartition:
    """Voters grouped by their first-axis score; empty slots are omitted."""

    clusters: tuple
    J1: tuple
    J2: tuple
    bounds: Theorem1Bounds
    axis: TcaAxis

    def cluster(self, alpha):
        for c in self.clusters:
            if c.alpha == alpha:
                return c
        return None

    @property
    def alphas(self):
        return tuple(c.alpha for c in self.clusters)

    def sizes(self):
        return {c.alpha: c.size for c in self.clusters}


def T_statistic(rows, J1):
    return np.asarray(rows)[:, list(J1)].sum(axis=1)


def partition_by_first_axis(p: Profile, axis: TcaAxis) -> ClusterPartition:
    J1, J2 = axis.J1, axis.J2
    if not J1 or not J2:
        raise InputError("first axis does not split the items")
    bounds = theorem1_bounds(len(J1), len(J2))
    nums = axis.f1_numerators()
    slots = {}
    for k, num in enumerate(nums):
        alpha = bounds.alpha_of(num)
        if alpha is None:
            raise OffLattice(f"voter {int(p.row_ids[k])} has f1 numerator {int(num)} "
                             f"outside the ({bounds.d1},{bounds.d2}) lattice")
        slots.setdefault(alpha, []).append(int(p.row_ids[k]))
    clusters = tuple(Cluster(a, tuple(slots[a]), bounds.numerator(a)) for a in sorted(slots))
    return ClusterPartition(clusters, J1, J2, bounds, axis)


@dataclass(frozen=True, eq=False)
class CoherencyVerdict:
    alpha: int
    coherent: bool
    sub_delta: Fraction
    sub_f_nega: Fraction
    theoretical_f: Fraction
    witness: int | None
    sub_J1: tuple
    sub_axis: TcaAxis
    reason: str = ""


def coherency_test(p: Profile, part: ClusterPartition, alpha, engine="auto",
                   restarts: RestartPolicy = RestartPolicy(),
                   limit=DEFAULT_ENUM_LIMIT) -> CoherencyVerdict:
    """Exact coherency verdict for cluster ``alpha`` of ``part``.

    The subprofile gets its own TCA (own nega row).  Coherent means every
    voter's sub-score is the same, that value equals ``|f(nega)|`` and the
    dispersion, and it sits at the lattice value of ``alpha`` under the
    parent's ``(d1, d2)``.
    """
    c = part.cluster(alpha)
    if c is None or c.size == 0:
        raise EmptyCluster(f"cluster {alpha} is empty")
    sub = p.subset(c.voter_ids)
    ax = run_tca(sub, 1, engine, restarts, limit).first
    expected = part.bounds.f_value(alpha)
    f = ax.f
    voters, f_nega = f[:-1], f[-1]
    witness, reason = None, ""
    for k, fk in enumerate(voters):
        if fk != voters[0]:
            witness, reason = int(sub.row_ids[k]), "unequal voter scores"
            break
    if witness is None and voters[0] != expected:
        witness, reason = int(sub.row_ids[0]), "score off the parent lattice value"
    if witness is None and not (ax.delta == abs(f_nega) == voters[0]):
        witness, reason = int(sub.row_ids[0]), "dispersion differs from |f(nega)|"
    return CoherencyVerdict(alpha, witness is None, ax.delta, f_nega, expected,
                            witness, ax.J1, ax, reason)


def crossing_index(delta1, d1, d2, d=None):
    """``1 - delta1 / f_max``; exact when ``delta1`` is a Fraction or int."""
    if d is None:
        d = d1 + d2
    fmax = Fraction(2 * d1 * d2, d * (d - 1))
    if isinstance(delta1, (Fraction, int)):
        val = Fraction(delta1)
        if val < 0 or val > fmax:
            raise OutOfRange(f"delta1={val} outside [0, {fmax}]")
        return 1 - val / fmax
    val = float(delta1)
    if val < 0 or val > float(fmax) + 1e-12:
        raise OutOfRange(f"delta1={val} outside [0, {float(fmax)}]")
    return 1.0 - val / float(fmax)
