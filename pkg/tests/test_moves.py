import random

import pytest
from hypothesis import given, strategies as st

from arckh.moves import (Movie, MovieError, S, Step, find_isotopy, flat_annular, isotopy,
                         random_tangle)
from arckh.tangles import Tangle, braid_tangle, matching_tangle, validate

A = matching_tangle(((1, 2), (3, 4)), 4)


def test_movie_json_round_trip():
    m = Movie(A, [S("birth", id=9), S("saddle", edges=[9, 1]), S("dot", edge=0),
                  S("isotopy", rename={0: 50}, order=[])])
    m2 = Movie.from_json(m.to_json())
    assert m2.end() == m.end() and m2.dumps() == m.dumps()


def test_bookkeeping():
    m = Movie(Tangle(), [S("birth", id=1), S("saddle", edges=[1, 1], new=2),
                         S("saddle", edges=[1, 2]), S("death", id=1)])
    assert m.bookkeeping() == (0, 0) and m.qdegree() == 0
    k = Movie(A, [S("r1_add", edge=0, sign=1), S("dot", edge=0)])
    assert k.bookkeeping() == (1, 0) and k.qdegree() == 2
    assert Movie(A, [S("r2_add", over=0, over_side="L", under=1, under_side="L")]).end().P == 1


def test_bad_steps():
    with pytest.raises(MovieError):
        Step("teleport", {})
    with pytest.raises(MovieError, match="step 0"):
        Movie(A, [S("death", id=0)]).end()
    with pytest.raises(MovieError):
        Movie(A, [S("r1_remove", crossing=0)]).end()


def test_r1_round_trip_restores_diagram():
    for sign in (1, -1):
        for side in "LR":
            T1, info = S("r1_add", edge=0, sign=sign, side=side).apply(A)
            assert info["sign"] == sign and T1.N == 1
            T2, _ = S("r1_remove", crossing=0).apply(T1)
            assert find_isotopy(T2, A) is not None


def test_r3_twice_is_identity():
    T = braid_tangle(3, [1, 2, 1])
    T1, _ = S("r3", crossings=[0, 1, 2]).apply(T)
    assert T1 != T
    assert S("r3", crossings=[0, 1, 2]).apply(T1)[0] == T


def test_r3_rejects_non_triangles():
    with pytest.raises(MovieError):
        S("r3", crossings=[0, 1, 2]).apply(braid_tangle(3, [1, 1, 1]))


def test_find_isotopy():
    T = braid_tangle(3, [1, -2])
    U, _ = isotopy(T, {1: 77, 2: 78}, [1, 0], rotate=[0])
    step = find_isotopy(T, U)
    assert step is not None and step.apply(T)[0] == U
    assert find_isotopy(T, braid_tangle(3, [1, 2])) is None


@given(st.integers(0, 10 ** 6), st.sampled_from([0, 2, 4]), st.sampled_from([0, 2, 4]))
def test_random_tangles_are_valid(seed, m, n):
    rng = random.Random(seed)
    if m == 0 and n == 0:
        n = 2
    F = flat_annular(m, n, rng)
    assert F.N == 0
    validate(F)
    T = random_tangle(m, n, rng.randint(0, 3), rng)
    validate(T)
    assert T.n == n
