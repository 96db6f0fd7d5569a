import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from arckh import library
from arckh.arc_algebra import picture
from arckh.duality import check_duality, dual_hom, dualize, mirror_annular
from arckh.homology import homology
from arckh.moves import random_tangle
from arckh.tangles import Tangle, TangleError, braid_tangle, enumerate_matchings, matching_tangle


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 4]), st.integers(0, 2))
def test_duality(seed, m, N):
    T = random_tangle(m, 0, N, random.Random(seed))
    for e, (H, Hm, ok) in check_duality(T).items():
        assert ok, (e, H, Hm)


@pytest.mark.parametrize("name", sorted(library.tangles("duality")))
def test_bundled_duality_tangles(name):
    T = library.tangles("duality")[name]
    assert all(ok for *_, ok in check_duality(T).values())


def test_chain_groups_match_degreewise():
    T = library.tangles("duality")["dual4_2_0"]
    for e in ((((1, 2), (3, 4))), (((1, 4), (2, 3)))):
        assert all(a == b for a, b in dualize(T, e).values())


def annular_twist(word):
    """The (4;)-tangle of a 2-braid, read from inside the disk."""
    B = braid_tangle(2, word)
    return Tangle(n=0, inner=(4,), crossings=B.crossings,
                  inner_boundary=(tuple(reversed(B.boundary)),), P=B.P)


@pytest.mark.parametrize("word", [[1, 1], [-1, -1], [1, 1, 1]])
def test_twists_and_unmirrored_control(word):
    T = annular_twist(word)
    assert all(ok for *_, ok in check_duality(T).values())
    wrong = replace(mirror_annular(T), crossings=tuple(T.crossings))
    assert any(homology(dual_hom(T, e).complex) != homology(picture(wrong, (), e).K).shift(0, 2)
               for e in enumerate_matchings(4))


def test_mirror_annular_requires_annular_input():
    with pytest.raises(TangleError):
        mirror_annular(matching_tangle(((1, 2),), 2))
