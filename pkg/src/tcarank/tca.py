"""Taxicab correspondence analysis of the nega-coded score table.

All quantities on the coherence-critical path are exact.  A residual
correspondence matrix ``P_k`` is held as an integer matrix ``S`` over a common
integer denominator ``D`` (``P_k = S / D``); for the first axis ``D = 2t`` and
``S`` has entries ``2 r_ij - (d-1)`` on voter rows.  Every axis quantity is
then an integer vector over ``D``:

* ``a = S u / D`` and ``b = S' v / D``;
* ``f = a / p_i*`` with row masses ``1/(2n)`` (voters) and ``1/2`` (nega);
* ``g = b / p_*j`` with column masses ``1/d``;
* ``delta = ||S u||_1 / D``.

Sign vectors use ``sgn(0) = -1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

from .errors import DimensionTooLarge, IncompleteAxes, InputError, ZeroDispersion
from .ranks import NegaTable, Profile, reverse_and_nega

_INT64_SAFE = 2 ** 62
DEFAULT_ENUM_LIMIT = 24


def sgn(x):
    """Coordinatewise sign with ``sgn(0) = -1``."""
    return np.where(np.asarray(x) > 0, 1, -1).astype(np.int64)


def _fit(S):
    """Store an integer matrix as int64 when products stay safe, else as objects."""
    S = np.asarray(S)
    big = max((abs(int(x)) for x in S.flat), default=0)
    rows, cols = S.shape
    if big * (rows + 1) * (cols + 1) < _INT64_SAFE:
        return S.astype(np.int64)
    return S.astype(object)


def _exact_rank(M):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [[int(x) for x in row] for row in np.asarray(M).T]  # d rows are fewer
    rows, cols = len(A), len(A[0]) if A else 0
    rank, prev = 0, 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for r in range(rank + 1, rows):
            a_rc = A[r][c]
            A[r] = [(p * A[r][k] - a_rc * A[rank][k]) // prev for k in range(cols)]
        prev = p
        rank += 1
    return rank


@dataclass(frozen=True, eq=False)
class CorrespondenceMatrix:
    """``P = R_nega / t`` kept as its integer numerators."""

    counts: np.ndarray
    t: int

    @property
    def shape(self):
        return self.counts.shape

    @property
    def n(self):
        return self.counts.shape[0] - 1

    @property
    def d(self):
        return self.counts.shape[1]

    def cell(self, i, j):
        return Fraction(int(self.counts[i, j]), self.t)

    def cells(self):
        return [[Fraction(int(x), self.t) for x in row] for row in self.counts]

    @cached_property
    def row_masses(self):
        return tuple(Fraction(int(s), self.t) for s in self.counts.sum(axis=1))

    @cached_property
    def col_masses(self):
        return tuple(Fraction(int(s), self.t) for s in self.counts.sum(axis=0))

    @cached_property
    def rank_bound(self):
        """``k = rank(P) - 1``, the number of nontrivial axes."""
        return _exact_rank(self.counts) - 1


def build_correspondence(nt: NegaTable) -> CorrespondenceMatrix:
    return CorrespondenceMatrix(nt.stacked.astype(np.int64), nt.t)


@dataclass(frozen=True, eq=False)
class ResidualMatrix:
    """Residual correspondence matrix ``P_k = scaled / denominator``.

    ``n`` and ``d`` fix the masses (voters ``1/(2n)``, nega ``1/2``,
    items ``1/d``); they do not change under deflation.
    """

    scaled: np.ndarray
    denominator: int
    axis_index: int
    n: int
    d: int

    def cells(self):
        return [[Fraction(int(x), self.denominator) for x in row] for row in self.scaled]

    def is_zero(self):
        return not np.any(self.scaled != 0)


def residual(cm: CorrespondenceMatrix) -> ResidualMatrix:
    """First residual ``p_ij - p_i* p_*j`` scaled by ``2t`` (integer exact)."""
    c = cm.counts.astype(object)
    t = cm.t
    r = c.sum(axis=1)
    k = c.sum(axis=0)
    num = 2 * c * t - 2 * np.outer(r, k)
    if any(int(x) % t for x in num.flat):
        raise InputError("residual is not integral over 2t; not a nega-coded table")
    scaled = num // t
    return ResidualMatrix(_fit(scaled), 2 * t, 1, cm.n, cm.d)


@dataclass(frozen=True, eq=False)
class TcaAxis:
    """One principal axis; vectors are integer numerators over ``denominator``.

    ``ties`` counts the distinct (oriented, sign-consistent) global maximizers
    seen by the engine; anything above 1 means the deterministic tie-break
    decided the axis.
    """

    u: np.ndarray
    v: np.ndarray
    a_num: np.ndarray
    b_num: np.ndarray
    denominator: int
    n: int
    d: int
    method: str = "given"
    restarts_used: int = 0
    ties: int = 1
    history: tuple = field(default=())

    @property
    def objective(self):
        return int(np.abs(self.a_num).sum())

    @property
    def delta(self):
        return Fraction(self.objective, self.denominator)

    @property
    def a(self):
        return tuple(Fraction(int(x), self.denominator) for x in self.a_num)

    @property
    def b(self):
        return tuple(Fraction(int(x), self.denominator) for x in self.b_num)

    @property
    def f(self):
        D, n = self.denominator, self.n
        out = [Fraction(2 * n * int(x), D) for x in self.a_num[:-1]]
        out.append(Fraction(2 * int(self.a_num[-1]), D))
        return tuple(out)

    @property
    def f_nega(self):
        return Fraction(2 * int(self.a_num[-1]), self.denominator)

    @property
    def g(self):
        return tuple(Fraction(self.d * int(x), self.denominator) for x in self.b_num)

    def f_scaled(self, scale):
        """Voter scores times ``scale`` as exact ints (raises if not integral)."""
        num = 2 * self.n * scale
        out = []
        for x in self.a_num[:-1]:
            q, r = divmod(num * int(x), self.denominator)
            if r:
                raise InputError(f"voter score not a multiple of 1/{scale}")
            out.append(q)
        return np.array(out, dtype=object if abs(num) > 2 ** 40 else np.int64)

    def f1_numerators(self):
        """Voter scores as integer numerators over ``d(d-1)``."""
        return self.f_scaled(self.d * (self.d - 1))

    @property
    def J1(self):
        return tuple(int(j) for j in np.flatnonzero(self.u < 0))

    @property
    def J2(self):
        return tuple(int(j) for j in np.flatnonzero(self.u > 0))


def _orient(S, u):
    """Fix the global sign so the nega row scores non-positive.

    When the nega coordinate is exactly zero the first item is put on the
    negative side, which keeps ``u`` and ``-u`` mapping to the same axis.
    """
    a_nega = int(S[-1] @ u)
    if a_nega > 0 or (a_nega == 0 and u[0] > 0):
        return -u
    return u


def _settle(S, u, max_rounds=None):
    """Orient ``u`` and iterate ``u <- sgn(S' sgn(S u))`` to a fixed point.

    From a global maximizer the iteration only moves coordinates sitting on
    zeros from +1 to -1, so it stays at the maximum and terminates; the result
    satisfies ``u = sgn(b)`` and ``v = sgn(a)`` exactly.
    """
    if max_rounds is None:
        max_rounds = 2 * (S.shape[0] + S.shape[1]) + 4
    u = _orient(S, np.asarray(u, dtype=np.int64))
    for _ in range(max_rounds):
        nxt = sgn(S.T @ sgn(S @ u))
        nxt = _orient(S, nxt)
        if np.array_equal(nxt, u):
            break
        u = nxt
    return u


def factor_scores(rm: ResidualMatrix, u, method="given", restarts_used=0, ties=1,
                  history=()) -> TcaAxis:
    """Axis quantities for a given item sign vector (sign-fixed on nega)."""
    S = rm.scaled
    u = _orient(S, np.asarray(u, dtype=np.int64))
    a = S @ u
    v = sgn(a)
    b = S.T @ v
    return TcaAxis(u, v, a, b, rm.denominator, rm.n, rm.d, method,
                   restarts_used, ties, tuple(history))


def _patterns(d, start, stop):
    k = np.arange(start, stop, dtype=np.int64)
    U = np.ones((d, stop - start), dtype=np.int64)
    for j in range(d - 1):
        U[j] = ((k >> j) & 1) * 2 - 1
    return U


def _pick(S, candidates):
    """Deterministic tie-break: largest |f(nega)|, then lexicographically smallest u."""
    uniq = {}
    for u in candidates:
        uniq.setdefault(tuple(int(x) for x in u), u)
    key = lambda t: (-abs(int(S[-1] @ np.array(t))), t)
    best = min(uniq, key=key)
    return np.array(best, dtype=np.int64), len(uniq)


def first_axis_enumerate(rm: ResidualMatrix, limit=DEFAULT_ENUM_LIMIT) -> TcaAxis:
    """Global maximum of ``||P u||_1`` by scanning all ``2^(d-1)`` sign patterns."""
    S, d = rm.scaled, rm.d
    if d > limit:
        raise DimensionTooLarge(f"d={d} exceeds the enumeration limit {limit}")
    total = 1 << (d - 1)
    chunk = max(1, min(total, (1 << 22) // max(1, S.shape[0])))
    best, winners = -1, []
    for start in range(0, total, chunk):
        U = _patterns(d, start, min(total, start + chunk))
        obj = np.abs(S @ U).sum(axis=0)
        m = obj.max()
        if m > best:
            best, winners = m, []
        if m == best:
            winners.extend(U[:, k] for k in np.flatnonzero(obj == m))
    settled = [_settle(S, u) for u in winners]
    u, ties = _pick(S, settled)
    return factor_scores(rm, u, "enumerate", 0, ties)


@dataclass(frozen=True)
class RestartPolicy:
    """Starting configurations for the ascent algorithm.

    Column seeds start from ``v = sgn(column j)``; row seeds from
    ``u = sgn(row i)``.  ``n_rows=None`` uses every row.
    """

    columns: bool = True
    n_rows: int | None = 64
    seed: int = 0


def _seeds(S, policy):
    seeds = []
    if policy.columns:
        for j in range(S.shape[1]):
            seeds.append(sgn(S.T @ sgn(S[:, j])))
    rows = S.shape[0]
    if policy.n_rows is None or policy.n_rows >= rows:
        picked = range(rows)
    else:
        rng = np.random.default_rng(policy.seed)
        picked = np.sort(rng.choice(rows, size=policy.n_rows, replace=False))
    for i in picked:
        seeds.append(sgn(S[i]))
    return seeds


def _ascend(S, u, max_iter=1000):
    """Alternate the transition formulae from ``u``; returns (u, objective history)."""
    u = np.asarray(u, dtype=np.int64)
    hist = [int(np.abs(S @ u).sum())]
    seen = {tuple(u)}
    for _ in range(max_iter):
        nxt = sgn(S.T @ sgn(S @ u))
        obj = int(np.abs(S @ nxt).sum())
        hist.append(obj)
        key = tuple(nxt)
        if np.array_equal(nxt, u) or key in seen:
            u = nxt
            break
        seen.add(key)
        u = nxt
    return u, hist


def first_axis_ascent(rm: ResidualMatrix, starts: RestartPolicy = RestartPolicy(),
                      max_iter=1000) -> TcaAxis:
    """Best local maximum of the sign-iteration ascent over all restarts."""
    S = rm.scaled
    seeds = _seeds(S, starts)
    if not seeds:
        raise InputError("ascent needs at least one start")
    results = []
    for u0 in seeds:
        u, hist = _ascend(S, u0, max_iter)
        u = _settle(S, u)
        results.append((int(np.abs(S @ u).sum()), u, hist))
    best = max(r[0] for r in results)
    winners = [r for r in results if r[0] == best]
    u, ties = _pick(S, [r[1] for r in winners])
    hist = tuple(tuple(r[2]) for r in results)
    return factor_scores(rm, u, "ascent", len(seeds), ties, hist)


def first_axis(rm: ResidualMatrix, engine="auto", restarts: RestartPolicy = RestartPolicy(),
               limit=DEFAULT_ENUM_LIMIT) -> TcaAxis:
    if engine == "enumerate" or (engine == "auto" and rm.d <= limit):
        return first_axis_enumerate(rm, limit=max(limit, rm.d) if engine == "enumerate" else limit)
    if engine in ("ascent", "auto"):
        return first_axis_ascent(rm, restarts)
    raise InputError(f"unknown engine {engine!r}")


def deflate(rm: ResidualMatrix, axis: TcaAxis) -> ResidualMatrix:
    """``P_{k+1} = P_k - a b' / delta``, kept integral over a grown denominator."""
    N = axis.objective
    if N == 0:
        raise ZeroDispersion("dispersion is zero; no further axes")
    S = rm.scaled.astype(object)
    a = axis.a_num.astype(object)
    b = axis.b_num.astype(object)
    new = N * S - np.outer(a, b)
    den = rm.denominator * N
    g = den
    for x in new.flat:
        g = gcd(g, int(x))
        if g == 1:
            break
    if g > 1:
        new = new // g
        den //= g
    return ResidualMatrix(_fit(new), den, rm.axis_index + 1, rm.n, rm.d)


@dataclass(frozen=True, eq=False)
class TcaResult:
    """A TCA run on one profile: inputs and the computed axes."""

    nega: NegaTable
    correspondence: CorrespondenceMatrix
    residuals: tuple
    axes: tuple

    @property
    def first(self):
        return self.axes[0]


def run_tca(p: Profile, n_axes=1, engine="auto", restarts: RestartPolicy = RestartPolicy(),
            limit=DEFAULT_ENUM_LIMIT) -> TcaResult:
    """First ``n_axes`` axes (fewer if the residual is exhausted earlier)."""
    nt = reverse_and_nega(p)
    cm = build_correspondence(nt)
    rm = residual(cm)
    residuals, axes = [rm], []
    while len(axes) < n_axes and not rm.is_zero():
        ax = first_axis(rm, engine, restarts, limit)
        axes.append(ax)
        if len(axes) < n_axes:
            rm = deflate(rm, ax)
            residuals.append(rm)
    return TcaResult(nt, cm, tuple(residuals), tuple(axes))


def all_axes(cm: CorrespondenceMatrix, engine="enumerate", limit=DEFAULT_ENUM_LIMIT):
    """Every nontrivial axis, deflating until the residual vanishes."""
    rm = residual(cm)
    axes = []
    while not rm.is_zero():
        ax = first_axis(rm, engine, limit=limit)
        axes.append(ax)
        rm = deflate(rm, ax)
    return axes


@dataclass(frozen=True)
class Reconstitution:
    cells: list
    complete: bool


def reconstitute(cm: CorrespondenceMatrix, axes, strict=False) -> Reconstitution:
    """Rebuild ``P`` from masses and axes; exact when all ``k`` axes are given."""
    complete = len(axes) >= cm.rank_bound
    if strict and not complete:
        raise IncompleteAxes(f"{len(axes)} axes supplied, rank bound is {cm.rank_bound}")
    rmass, cmass = cm.row_masses, cm.col_masses
    terms = [(ax.f, ax.g, ax.delta) for ax in axes]
    cells = []
    for i, pi in enumerate(rmass):
        row = []
        for j, pj in enumerate(cmass):
            s = Fraction(1)
            for f, g, delta in terms:
                s += f[i] * g[j] / delta
            row.append(pi * pj * s)
        cells.append(row)
    return Reconstitution(cells, complete)
