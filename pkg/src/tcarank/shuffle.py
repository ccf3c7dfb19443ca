"""Riffle-shuffle types of ballots relative to an item split, and their census."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, Inconsistent
from .ranks import MarginalsTable, Profile


@dataclass(frozen=True)
class ShuffleType:
    scores_J1: tuple
    T: int
    crossed: tuple

    @property
    def d1(self):
        return len(self.scores_J1)

    def scores_J2(self, d):
        """The complementary score set carried by the other block."""
        have = set(self.scores_J1)
        return tuple(s for s in range(d) if s not in have)


def shuffle_type(row, J1) -> ShuffleType:
    row = np.asarray(row)
    J1 = list(J1)
    if not J1 or len(J1) >= len(row):
        raise InputError("J1 must be a nonempty proper subset of the items")
    scores = tuple(sorted(int(row[j]) for j in J1))
    d1 = len(J1)
    return ShuffleType(scores, sum(scores), tuple(s for s in scores if s >= d1))


@dataclass(frozen=True)
class ShuffleCensus:
    entries: tuple          # ((scores_J1, count), ...) ordered by T then lexicographically
    J1: tuple
    cluster_alpha: int | None = None

    @property
    def total(self):
        return sum(c for _, c in self.entries)

    def as_dict(self):
        return dict(self.entries)

    def count(self, scores):
        return self.as_dict().get(tuple(sorted(scores)), 0)


def shuffle_census(p: Profile, voters, J1, cluster_alpha=None) -> ShuffleCensus:
    sub = p.subset(voters)
    if sub.n == 0:
        raise InputError("census needs at least one voter")
    J1 = tuple(int(j) for j in J1)
    keys = np.sort(sub.rows[:, list(J1)], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    entries = sorted(((tuple(int(x) for x in k), int(c)) for k, c in zip(uniq, counts)),
                     key=lambda e: (sum(e[0]), e[0]))
    return ShuffleCensus(tuple(entries), J1, cluster_alpha)


@dataclass(frozen=True)
class CensusCheck:
    per_score: tuple   # (score, from marginals, from census)

    @property
    def ok(self):
        return all(a == b for _, a, b in self.per_score)


def marginals_census_check(m: MarginalsTable, census: ShuffleCensus, J1=None) -> CensusCheck:
    """Each score's J1 usage must agree between the marginals and the census."""
    J1 = list(census.J1 if J1 is None else J1)
    d = m.counts.shape[0]
    rows = []
    for s in range(d):
        expected = int(m.counts[s, J1].sum())
        observed = sum(c for key, c in census.entries if s in key)
        if expected != observed:
            raise Inconsistent(s, expected, observed)
        rows.append((s, expected, observed))
    return CensusCheck(tuple(rows))
