from fractions import Fraction

import numpy as np
import pytest

from tcarank.errors import InputError, MissingAxis
from tcarank.peeling import peel
from tcarank.ranks import Preference, Profile, encode_profile
from tcarank.report import build_bundle, lattice_fraction, render_report
from tcarank.svgmap import map_coordinates, render_svg_map
from tcarank.synth import generate_synthetic


def test_lattice_fraction():
    assert lattice_fraction(Fraction(8, 15), 10) == "48/90"
    assert lattice_fraction(Fraction(1, 7), 4) == "1/7"


def test_toy_report(toy):
    res = peel(toy)
    text = render_report(build_bundle(toy, res))
    assert "cohG(1)  n = 2 (50.00%)" in text
    assert "2/3" in text
    assert "Cross(cohG(1))=0.0%" in text
    assert "noisyG:" in text


def test_clean_profile_has_empty_noisy_group():
    syn = generate_synthetic(4, 6, [(1, 40), (2, 30)], seed=5)
    res = peel(syn.profile)
    b = build_bundle(syn.profile, res)
    text = render_report(b)
    assert "noisyG: 0 voters" in text
    assert "cohG(1)  n = 70 (100.00%)" in text
    assert all(c.check.ok for c in b.clusters)
    md = render_report(b, "markdown")
    assert md.startswith("# ") and "| alpha | size |" in md


def test_tie_break_is_flagged(toy):
    text = render_report(build_bundle(toy, peel(toy), with_map=False))
    assert "(tie-break used)" in text


def test_svg_is_deterministic():
    syn = generate_synthetic(2, 3, [(1, 20), (2, 15)], seed=1, noise=10)
    a = render_svg_map(map_coordinates(syn.profile, title="t"))
    b = render_svg_map(map_coordinates(syn.profile, title="t"))
    assert a == b and a.startswith("<?xml") and a.rstrip().endswith("</svg>")
    assert "-0.000" not in a
    items = render_svg_map(map_coordinates(syn.profile), which="items")
    assert items.count("<rect") == 1 + 5
    with pytest.raises(InputError):
        render_svg_map(map_coordinates(syn.profile), which="both")


def test_coherent_cluster_shares_abscissa():
    syn = generate_synthetic(4, 6, [(2, 50)], seed=3)
    m = map_coordinates(syn.profile)
    assert len({pt.x for pt in m.voters}) == 1


def test_two_items_have_one_axis():
    p = Profile("ab", np.array([[1, 0], [0, 1], [1, 0]]))
    with pytest.raises(MissingAxis):
        map_coordinates(p)


def test_repeated_ballot_label():
    orders = [Preference((2, 0, 4, 1, 3), 162), Preference((0, 1, 2, 3, 4), 40),
              Preference((4, 3, 2, 1, 0), 25), Preference((1, 3, 0, 4, 2), 30)]
    p = encode_profile(orders, "ABCDE")
    labels = {pt.label for pt in map_coordinates(p).voters}
    assert "CAEBD162" in labels
