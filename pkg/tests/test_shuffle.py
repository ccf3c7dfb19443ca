from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import profiles
from tcarank.errors import Inconsistent, InputError
from tcarank.ranks import MarginalsTable, Profile, first_order_marginals
from tcarank.shuffle import (ShuffleCensus, marginals_census_check, shuffle_census,
                             shuffle_type)
from tcarank.synth import generate_synthetic

# ten items a..j scored by seven voters; J1 = {a, b, c, d}
SEVEN = np.array([
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
    [0, 2, 3, 1, 6, 4, 5, 8, 7, 9],
    [3, 2, 1, 0, 5, 6, 4, 9, 7, 8],
    [2, 1, 0, 3, 8, 7, 9, 4, 5, 6],
    [0, 1, 2, 5, 4, 3, 6, 7, 8, 9],
    [1, 2, 5, 0, 3, 6, 4, 9, 7, 8],
    [0, 4, 5, 1, 6, 8, 9, 2, 7, 3],
])
J1 = (0, 1, 2, 3)

# first-order marginals of the two largest-weight clusters of a ten-item survey,
# columns ordered so that the first four form J1
M11 = np.array([
    [174, 92, 37, 11, 0, 0, 0, 0, 0, 0],
    [88, 88, 76, 62, 0, 0, 0, 0, 0, 0],
    [38, 78, 91, 107, 0, 0, 0, 0, 0, 0],
    [14, 56, 110, 134, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 92, 78, 73, 38, 21, 12],
    [0, 0, 0, 0, 95, 77, 59, 42, 23, 18],
    [0, 0, 0, 0, 47, 63, 70, 65, 37, 32],
    [0, 0, 0, 0, 35, 49, 45, 72, 68, 45],
    [0, 0, 0, 0, 32, 27, 32, 62, 87, 74],
    [0, 0, 0, 0, 13, 20, 35, 35, 78, 133],
])
M12 = np.array([
    [127, 70, 32, 6, 0, 0, 0, 0, 0, 0],
    [69, 82, 38, 46, 0, 0, 0, 0, 0, 0],
    [32, 56, 62, 85, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 55, 59, 74, 29, 15, 3],
    [7, 27, 103, 98, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 68, 60, 42, 41, 11, 13],
    [0, 0, 0, 0, 49, 53, 35, 48, 32, 18],
    [0, 0, 0, 0, 26, 35, 42, 48, 40, 44],
    [0, 0, 0, 0, 28, 15, 22, 44, 70, 56],
    [0, 0, 0, 0, 9, 13, 20, 25, 67, 101],
])


def test_voter_five():
    s = shuffle_type(SEVEN[4], J1)
    assert s.scores_J1 == (0, 1, 2, 5) and s.T == 8 and s.crossed == (5,)


def test_voter_seven():
    s = shuffle_type(SEVEN[6], J1)
    assert s.scores_J1 == (0, 1, 4, 5) and s.T == 10 and s.crossed == (4, 5)


def test_uncrossed_voters():
    for row in SEVEN[:4]:
        s = shuffle_type(row, J1)
        assert s.T == 6 and s.crossed == ()


def test_complement():
    s = shuffle_type(SEVEN[6], J1)
    assert s.scores_J2(10) == (2, 3, 6, 7, 8, 9)


def test_bad_J1():
    with pytest.raises(InputError):
        shuffle_type(SEVEN[0], ())
    with pytest.raises(InputError):
        shuffle_type(SEVEN[0], range(10))


def test_census_of_seven():
    p = Profile("abcdefghij", SEVEN)
    c = shuffle_census(p, range(7), J1)
    assert c.entries == (((0, 1, 2, 3), 4), ((0, 1, 2, 5), 2), ((0, 1, 4, 5), 1))
    assert c.total == 7


def test_marginals_identity_block_diagonal():
    m = MarginalsTable(M11)
    assert m.n == 314
    cen = ShuffleCensus((((0, 1, 2, 3), 314),), J1, 1)
    assert marginals_census_check(m, cen).ok
    assert not M11[4:, :4].any()


def test_marginals_identity_one_crossing():
    m = MarginalsTable(M12)
    assert M12[4, :4].sum() == 7 + 27 + 103 + 98 == 235
    cen = ShuffleCensus((((0, 1, 2, 4), 235),), J1, 2)
    assert marginals_census_check(m, cen).ok


def test_marginals_identity_catches_corruption():
    cen = ShuffleCensus((((0, 1, 2, 3), 200), ((0, 1, 2, 4), 35)), J1, 2)
    with pytest.raises(Inconsistent) as e:
        marginals_census_check(MarginalsTable(M12), cen)
    assert e.value.score == 3


@given(profiles(min_d=3, max_d=8, max_n=40), st.data())
def test_census_agrees_with_marginals(p, data):
    k = data.draw(st.integers(1, p.d - 1))
    J = tuple(sorted(data.draw(st.permutations(range(p.d)))[:k]))
    cen = shuffle_census(p, p.row_ids, J)
    assert cen.total == p.n
    assert marginals_census_check(first_order_marginals(p), cen).ok
    assert len(cen.entries) <= comb(p.d, k)
    keys = [e[0] for e in cen.entries]
    assert keys == sorted(keys, key=lambda x: (sum(x), x))


def test_single_voter_agrees():
    p = Profile("abcd", np.array([[1, 3, 0, 2]]))
    cen = shuffle_census(p, [0], (0, 2))
    assert marginals_census_check(first_order_marginals(p), cen).ok


def test_coherent_cluster_census_shares_T():
    syn = generate_synthetic(4, 6, [(5, 80)], seed=2)
    cen = shuffle_census(syn.profile, syn.clusters[0].voter_ids, syn.J1, 5)
    assert {sum(k) for k, _ in cen.entries} == {5 - 1 + 6}
    assert cen.total == 80
