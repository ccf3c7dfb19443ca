from fractions import Fraction

import numpy as np
import pytest

from tcarank.coherence import T_statistic, partition_by_first_axis
from tcarank.errors import InfeasibleAlpha, InputError
from tcarank.synth import generate_synthetic, score_sets
from tcarank.tca import run_tca


def test_score_sets():
    assert score_sets(3, 1, 0) == ((0,),)
    assert score_sets(5, 2, 4) == ((0, 4), (1, 3))
    assert score_sets(4, 2, 99) == ()


@pytest.mark.parametrize("alpha", [0, 26])
def test_alpha_outside_lattice(alpha):
    with pytest.raises(InfeasibleAlpha):
        generate_synthetic(4, 6, [(alpha, 10)])


def test_nonpositive_lattice_score_rejected():
    # 2*d1*d2 - 4*(alpha-1) <= 0 once alpha >= 13 for (4, 6)
    with pytest.raises(InfeasibleAlpha):
        generate_synthetic(4, 6, [(13, 10)])
    syn = generate_synthetic(4, 6, [(13, 10)], ensure_coherent=False)
    assert syn.clusters[0].T == 18


def test_bad_arguments():
    with pytest.raises(InputError):
        generate_synthetic(0, 3, [(1, 5)])
    with pytest.raises(InputError):
        generate_synthetic(2, 3, [(1, 5)], within="sorted")
    with pytest.raises(InputError):
        generate_synthetic(2, 3, [(1, 0)])
    with pytest.raises(InputError):
        generate_synthetic(2, 3, [(1, 5)], J1=(0,))


def test_deterministic():
    a = generate_synthetic(4, 6, [(1, 30), (3, 20)], seed=11, noise=15)
    b = generate_synthetic(4, 6, [(1, 30), (3, 20)], seed=11, noise=15)
    c = generate_synthetic(4, 6, [(1, 30), (3, 20)], seed=12, noise=15)
    assert np.array_equal(a.profile.rows, b.profile.rows)
    assert not np.array_equal(a.profile.rows, c.profile.rows)


def test_planted_T_and_ids():
    syn = generate_synthetic(3, 4, [(1, 10), (2, 12), (4, 8)], seed=3, noise=5, J1=(1, 4, 6))
    p = syn.profile
    assert p.n == 35 and syn.noise_ids == tuple(range(30, 35))
    assert syn.J2 == (0, 2, 3, 5)
    for c in syn.clusters:
        T = T_statistic(p.subset(c.voter_ids).rows, syn.J1)
        assert set(T.tolist()) == {c.T} == {c.alpha - 1 + 3}


def test_planted_cluster_lands_on_its_slot():
    syn = generate_synthetic(4, 6, [(1, 40), (2, 40), (4, 40)], seed=8)
    part = partition_by_first_axis(syn.profile, run_tca(syn.profile).first)
    assert part.J1 == syn.J1
    for c in syn.clusters:
        assert part.cluster(c.alpha).voter_ids == c.voter_ids


def test_fixed_within_toy():
    # alpha=1 puts the lone J1 item at the bottom; every ballot is identical
    syn = generate_synthetic(1, 2, [(1, 4)], within="fixed")
    p = syn.profile
    assert p.rows.tolist() == [[0, 1, 2]] * 4
    assert run_tca(p).first.delta == Fraction(2, 3)
