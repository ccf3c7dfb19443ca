from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import profiles, random_profile
from tcarank.coherence import (T_statistic, coherency_test, crossing_index,
                               partition_by_first_axis, theorem1_bounds)
from tcarank.errors import EmptyCluster, OffLattice, OutOfRange
from tcarank.ranks import Profile
from tcarank.synth import generate_synthetic
from tcarank.tca import run_tca


def _partition(p):
    return partition_by_first_axis(p, run_tca(p).first)


@pytest.mark.parametrize("d1,d2,k,fmax,gap", [
    (4, 6, 25, Fraction(48, 90), Fraction(4, 90)),
    (1, 1, 2, Fraction(1), Fraction(2)),
    (5, 5, 26, Fraction(50, 90), Fraction(4, 90)),
])
def test_bounds(d1, d2, k, fmax, gap):
    b = theorem1_bounds(d1, d2)
    assert (b.max_clusters, b.f_max, b.gap) == (k, fmax, gap)
    assert b.f_min == -b.f_max
    assert (b.f_max - b.f_min) / b.gap == d1 * d2
    assert b.f_value(k) == b.f_min


def test_toy_partition(toy):
    part = _partition(toy)
    assert part.J1 == (0,) and part.J2 == (1, 2)
    assert [(c.alpha, c.voter_ids) for c in part.clusters] == [(1, (0, 2)), (2, (1, 3))]
    assert part.bounds.f_value(1) == Fraction(2, 3) and part.bounds.f_value(2) == 0


def test_identical_ballots_single_top_cluster():
    p = Profile("abcde", np.array([[4, 3, 2, 1, 0]] * 7))
    part = _partition(p)
    assert len(part.clusters) == 1
    c = part.clusters[0]
    assert c.alpha == 1 and c.size == 7
    assert part.axis.f[0] == part.bounds.f_max


@given(profiles(min_d=3, max_d=8, min_n=2, max_n=60))
def test_lattice_law_and_T(p):
    ax = run_tca(p).first
    part = partition_by_first_axis(p, ax)
    b = part.bounds
    nums = ax.f1_numerators()
    allowed = {b.numerator(a) for a in range(1, b.max_clusters + 1)}
    assert set(int(x) for x in nums) <= allowed
    assert max(ax.f[:-1]) <= b.f_max and min(ax.f[:-1]) >= b.f_min
    T = T_statistic(p.rows, part.J1)
    base = b.d1 * (b.d1 - 1) // 2
    alpha_of = {i: c.alpha for c in part.clusters for i in c.voter_ids}
    for k, i in enumerate(p.row_ids):
        assert alpha_of[int(i)] == T[k] - base + 1


@given(profiles(min_d=3, max_d=5, min_n=2, max_n=25))
def test_dispersion_dominates_nega_and_positive_coherent(p):
    part = _partition(p)
    for c in part.clusters:
        v = coherency_test(p, part, c.alpha)
        assert v.sub_delta >= abs(v.sub_f_nega)
        if v.coherent:
            assert v.theoretical_f > 0
            assert v.sub_delta == abs(v.sub_f_nega) == v.theoretical_f


def test_toy_cluster_one_coherent(toy):
    part = _partition(toy)
    v = coherency_test(toy, part, 1)
    assert v.coherent
    assert v.sub_delta == Fraction(2, 3) == abs(v.sub_f_nega)


def test_toy_cluster_two_incoherent(toy):
    # f = 0 on the parent axis, so no coherent cluster can sit there
    v = coherency_test(toy, _partition(toy), 2)
    assert not v.coherent and v.witness is not None


def test_empty_cluster(toy):
    with pytest.raises(EmptyCluster):
        coherency_test(toy, _partition(toy), 3)


def test_off_lattice_detected(toy):
    ax = run_tca(toy).first
    bad = ax.a_num.copy()
    bad[0] += 1
    with pytest.raises(OffLattice):
        partition_by_first_axis(toy, replace(ax, a_num=bad))


@pytest.mark.parametrize("d1,d2,alpha,size", [(1, 2, 1, 6), (2, 3, 2, 15), (4, 6, 3, 60), (5, 5, 4, 60)])
def test_generated_cluster_coherent_until_an_intruder_arrives(d1, d2, alpha, size):
    syn = generate_synthetic(d1, d2, [(alpha, size)], seed=alpha)
    p = syn.profile
    part = partition_by_first_axis(p, run_tca(p).first)
    assert part.J1 == syn.J1
    v = coherency_test(p, part, alpha)
    assert v.coherent
    assert v.sub_delta == theorem1_bounds(d1, d2).f_value(alpha)
    # one extra voter on a neighbouring slot, judged under the same split
    row = p.rows[0].copy()
    d = d1 + d2
    lo = int(np.argmax(np.where(np.isin(np.arange(d), syn.J1), row, -1)))
    hi = int(np.argmin(np.where(np.isin(np.arange(d), syn.J2), row, d)))
    row[lo], row[hi] = row[hi], row[lo]
    mixed = Profile(p.items, np.vstack([p.rows, row]))
    ax = run_tca(mixed).first
    mpart = partition_by_first_axis(mixed, ax)
    ids = set(range(p.n + 1))
    merged = replace(mpart, clusters=(replace(mpart.clusters[0], alpha=alpha, voter_ids=tuple(ids)),))
    assert not coherency_test(mixed, merged, alpha).coherent


@pytest.mark.parametrize("alpha", range(1, 8))
def test_cross_of_coherent_cluster(alpha):
    b = theorem1_bounds(4, 6)
    assert crossing_index(b.f_value(alpha), 4, 6, 10) == Fraction(2 * (alpha - 1), 24)


def test_cross_decimal_value():
    assert crossing_index(0.2354, 5, 5, 10) == pytest.approx(0.5763, abs=1e-4)


def test_cross_extremes():
    assert crossing_index(Fraction(48, 90), 4, 6, 10) == 0
    assert crossing_index(Fraction(0), 4, 6, 10) == 1
    with pytest.raises(OutOfRange):
        crossing_index(Fraction(49, 90), 4, 6, 10)
    with pytest.raises(OutOfRange):
        crossing_index(-0.1, 4, 6)


def test_random_profiles_partition_everyone():
    rng = np.random.default_rng(2)
    for _ in range(20):
        p = random_profile(rng, int(rng.integers(10, 80)), int(rng.integers(3, 9)))
        part = _partition(p)
        ids = sorted(i for c in part.clusters for i in c.voter_ids)
        assert ids == list(range(p.n))
