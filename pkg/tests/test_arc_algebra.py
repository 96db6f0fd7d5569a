import random

import pytest
from hypothesis import given, strategies as st

from arckh.arc_algebra import (GluingCheck, TangleMultiModule, arc_algebra, picture,
                               tensor_over_algebra)
from arckh.homology import homology
from arckh.moves import random_tangle
from arckh.tangles import TangleError, cap_tangle, compose, enumerate_matchings, offset


def test_ranks():
    # rank of C(n) is the sum over pairs of 2^(circles of a b-bar)
    assert [arc_algebra(n).total_rank() for n in (0, 2, 4, 6)] == [1, 2, 12, 104]


def test_rejects_odd():
    with pytest.raises(TangleError):
        arc_algebra(3)


@pytest.mark.parametrize("n", [0, 2, 4, 6])
def test_unit_grading_associativity(n):
    A = arc_algebra(n)
    assert A.check_unit()
    assert A.check_grading()
    assert A.check_associative()


def test_hom_spaces_sit_in_degree_zero():
    A = arc_algebra(4)
    for a in A.objects:
        for b in A.objects:
            assert all(h == 0 for h, _ in A.hom(a, b).K.grades)
            assert A.dim(a, b) == A.dim(b, a)
            assert min(q for _, q in A.hom(a, b).K.grades) >= 0


def _pair(seed):
    rng = random.Random(seed)
    ni = rng.choice([2, 4])
    n = rng.choice([0, 2, 4])
    NT = rng.randint(0, 2)
    NS = rng.randint(0, 3 - NT)
    return rng, random_tangle(ni, n, NT, rng), random_tangle(0, ni, NS, rng)


@given(st.integers(0, 10 ** 6))
def test_multimodule_properties(seed):
    _, T, _ = _pair(seed)
    M = TangleMultiModule(T)
    assert M.check_d_squared()
    assert M.check_actions()
    assert M.check_projective()


@given(st.integers(0, 10 ** 6))
def test_gluing_isomorphism(seed):
    rng, T, S = _pair(seed)
    b = rng.choice(enumerate_matchings(T.n))
    G = GluingCheck(T, 0, S, (), (), b)
    G.check()
    assert homology(tensor_over_algebra(T, 0, S, (), (), b)) == homology(G.Z.K)


def test_gluing_with_a_cap_gives_the_closure():
    # C(cap)(.; ) tensored with C(S)( ; c) is the closure of S by the cap
    rng = random.Random(7)
    S = random_tangle(0, 4, 2, rng)
    a = ((1, 4), (2, 3))
    T = cap_tangle(a, 4, start=1000)
    U, _ = compose(T, 0, S)
    H = homology(tensor_over_algebra(T, 0, S, (), (), ()))
    assert H == homology(picture(U, (), ()).K)
    # a picture of an n-ended tangle carries the extra shift n/2
    assert H == homology(picture(S, (), a).K).shift(0, -2)


@pytest.mark.parametrize("outer,inner", [([1], [1, 1]), ([-1, -1], [1]), ([1, 1], [1, 1, 1])])
def test_gluing_of_twists(outer, inner):
    from arckh.tangles import Tangle, braid_tangle
    B = braid_tangle(2, outer)
    T = Tangle(n=0, inner=(4,), crossings=B.crossings,
               inner_boundary=(tuple(reversed(B.boundary)),), P=B.P)
    S = braid_tangle(2, inner)
    G = GluingCheck(T, 0, S, (), (), ())
    G.check()
    assert homology(G.tensor_complex()) == homology(G.Z.K)
