"""Borda coding of linear orderings and the tables derived from it.

A ballot ranking ``d`` items most-preferred first gives its j-th item the
score ``d - j`` (so scores run ``d-1, ..., 0``).  A profile stacks those score
rows into an ``n x d`` integer matrix; everything downstream is computed from
that matrix with integer or rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyProfile, InputError, InvalidBallot


def _frozen(a, dtype=np.int64):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Preference:
    """One ballot: item indices most-preferred first, with a repeat count."""

    ordering: tuple
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ordering", tuple(int(x) for x in self.ordering))
        if self.multiplicity < 1:
            raise InputError(f"multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True, eq=False)
class Profile:
    """Voting profile: an ``n x d`` matrix of Borda scores.

    ``row_ids`` are stable voter identifiers; they survive :meth:`subset`, so
    a voter can be traced back to its input row after any amount of peeling.
    """

    items: tuple
    rows: np.ndarray
    row_ids: np.ndarray = field(default=None)

    def __post_init__(self):
        rows = np.asarray(self.rows)
        if rows.ndim != 2 or rows.shape[0] == 0:
            raise EmptyProfile("a profile needs at least one voter")
        n, d = rows.shape
        if d < 2:
            raise InputError("a profile needs at least two items")
        items = tuple(str(x) for x in self.items)
        if len(items) != d:
            raise InputError(f"{len(items)} labels for {d} items")
        ok = (np.sort(rows, axis=1) == np.arange(d)).all(axis=1)
        if not ok.all():
            raise InvalidBallot(int(np.flatnonzero(~ok)[0]),
                                f"scores are not a permutation of 0..{d - 1}")
        ids = np.arange(n) if self.row_ids is None else np.asarray(self.row_ids)
        if ids.shape != (n,):
            raise InputError("row_ids must have one entry per row")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "rows", _frozen(rows))
        object.__setattr__(self, "row_ids", _frozen(ids))

    @property
    def n(self):
        return self.rows.shape[0]

    @property
    def d(self):
        return self.rows.shape[1]

    def subset(self, ids):
        """Sub-profile of the voters whose ids are in ``ids`` (input order kept)."""
        mask = np.isin(self.row_ids, np.asarray(list(ids), dtype=np.int64))
        return self.take(mask)

    def take(self, selector):
        return Profile(self.items, self.rows[selector], self.row_ids[selector])

    def without(self, ids):
        mask = ~np.isin(self.row_ids, np.asarray(list(ids), dtype=np.int64))
        return self.take(mask)

    def orderings(self):
        """Decode every row back to item indices, most-preferred first."""
        return np.argsort(-self.rows, axis=1, kind="stable")

    def ordering_label(self, i, sep=None):
        order = np.argsort(-self.rows[i], kind="stable")
        labels = [self.items[j] for j in order]
        if sep is None:
            sep = "" if all(len(x) == 1 for x in self.items) else ">"
        return sep.join(labels)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return (self.items == other.items
                and np.array_equal(self.rows, other.rows)
                and np.array_equal(self.row_ids, other.row_ids))

    __hash__ = None


def encode_profile(prefs: Sequence[Preference], items) -> Profile:
    """Borda-score a list of ballots; multiplicities become repeated rows."""
    prefs = list(prefs)
    if not prefs:
        raise EmptyProfile("no ballots")
    items = tuple(items)
    d = len(items)
    rows = []
    for k, p in enumerate(prefs):
        if sorted(p.ordering) != list(range(d)):
            raise InvalidBallot(k, f"ordering {p.ordering} is not a permutation of 0..{d - 1}")
        r = [0] * d
        for pos, j in enumerate(p.ordering):
            r[j] = d - 1 - pos
        rows.extend([r] * p.multiplicity)
    return Profile(items, np.array(rows, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class NegaTable:
    """Profile plus its ``nega`` row (column sums of the reverse scores)."""

    profile: Profile
    nega: np.ndarray
    t: int

    @property
    def reverse(self):
        return (self.profile.d - 1) - self.profile.rows

    @property
    def stacked(self):
        """The ``(n+1) x d`` matrix with ``nega`` appended as the last row."""
        return np.vstack([self.profile.rows, self.nega[None, :]])


def reverse_and_nega(p: Profile) -> NegaTable:
    n, d = p.rows.shape
    nega = n * (d - 1) - p.rows.sum(axis=0)
    return NegaTable(p, _frozen(nega), n * d * (d - 1))


@dataclass(frozen=True, eq=False)
class BordaScale:
    beta: tuple        # exact Fractions
    stderr: np.ndarray  # floats

    def as_float(self):
        return np.array([float(b) for b in self.beta])


def borda_scale(p: Profile) -> BordaScale:
    """Column means of the score matrix, with standard errors.

    The standard error is the sample standard deviation (divisor ``n-1``)
    over ``sqrt(n)``; zero for a single voter.
    """
    n = p.n
    sums = p.rows.sum(axis=0)
    beta = tuple(Fraction(int(s), n) for s in sums)
    if n > 1:
        se = p.rows.std(axis=0, ddof=1) / np.sqrt(n)
    else:
        se = np.zeros(p.d)
    return BordaScale(beta, _frozen(se, dtype=float))


def reverse_borda_scale(p: Profile):
    n, d = p.rows.shape
    return tuple(Fraction(int(s), n) for s in (d - 1 - p.rows).sum(axis=0))


@dataclass(frozen=True, eq=False)
class MarginalsTable:
    """``counts[i, j]`` = number of voters giving item ``j`` score ``i``."""

    counts: np.ndarray
    items: tuple = ()

    @property
    def n(self):
        return int(self.counts[:, 0].sum())

    def beta(self):
        d = self.counts.shape[0]
        w = np.arange(d)[:, None]
        return tuple(Fraction(int(s), self.n) for s in (w * self.counts).sum(axis=0))


def first_order_marginals(p: Profile) -> MarginalsTable:
    d = p.d
    counts = np.zeros((d, d), dtype=np.int64)
    cols = np.broadcast_to(np.arange(d), p.rows.shape)
    np.add.at(counts, (p.rows, cols), 1)
    return MarginalsTable(_frozen(counts), p.items)
