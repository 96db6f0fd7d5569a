import random

import pytest
from hypothesis import given, strategies as st

from arckh import library
from arckh.homology import homology
from arckh.jones import bracket, jones_oracle
from arckh.khovanov import KhComplex, kh_complex
from arckh.moves import S, random_tangle
from arckh.tangles import Tangle, TangleError, braid_tangle, closure, enumerate_matchings
from arckh.verification import braid_closure


def kh(name):
    return homology(KhComplex(library.diagram(name)))


def test_unknot_and_empty():
    assert kh("unknot").to_json() == [{"h": 0, "q": -1, "free": 1}, {"h": 0, "q": 1, "free": 1}]
    assert kh("empty").to_json() == [{"h": 0, "q": 0, "free": 1}]


@pytest.mark.parametrize("k", [2, 3])
def test_unlinks(k):
    from math import comb
    H = kh(f"unlink{k}")
    assert H.groups == {(0, 2 * j - k): (comb(k, j), ()) for j in range(k + 1)}


def test_trefoil_and_hopf_ranks():
    T = kh("trefoil")
    assert T.total_rank() == 4
    assert sorted(t for _, t in T.groups.values() if t) == [(2,)]
    H = kh("hopf")
    assert H.total_rank() == 4 and all(not t for _, t in H.groups.values())


@pytest.mark.parametrize("name", library.golden_names())
def test_golden_tables(name):
    assert kh(name) == library.golden(name)


def test_jones_oracle_values():
    assert jones_oracle(Tangle(loops=[1])) == {-1: 1, 1: 1}
    assert jones_oracle(Tangle(loops=[1, 2])) == {-2: 1, 0: 2, 2: 1}
    with pytest.raises(TangleError):
        jones_oracle(Tangle(n=2, boundary=[1, 1]))


def test_bracket_of_empty():
    assert bracket(closure(Tangle())) == {0: 1}


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_euler_equals_oracle(word):
    cd, P = braid_closure(3, word)
    assert homology(KhComplex(cd, P, 0)).euler() == jones_oracle(cd, P)


@given(st.integers(0, 10 ** 6))
def test_differential_squares_to_zero_on_all_closures(seed):
    rng = random.Random(seed)
    T = random_tangle(0, rng.choice([2, 4]), rng.randint(0, 3), rng)
    for b in enumerate_matchings(T.n):
        assert kh_complex(T, (), b).check()


def _try(step, T):
    try:
        return step.apply(T)[0]
    except TangleError:  # the move does not fit in the diagram
        return None


@given(st.integers(0, 10 ** 6))
def test_reidemeister_moves_preserve_homology(seed):
    rng = random.Random(seed)
    T = random_tangle(0, 4, rng.randint(0, 2), rng)
    es = sorted(T.edges())
    cands = [S("r1_add", edge=rng.choice(es), sign=rng.choice((1, -1)), side=rng.choice("LR"))]
    for o in "LR":
        for u in "LR":
            a, b = rng.sample(es, 2)
            cands.append(S("r2_add", over=a, over_side=o, under=b, under_side=u))
    for st_ in cands:
        T2 = _try(st_, T)
        if T2 is None:
            continue
        for b in enumerate_matchings(4):
            assert homology(kh_complex(T2, (), b)) == homology(kh_complex(T, (), b))


@pytest.mark.parametrize("word", [[1, 2, 1], [-1, -2, -1], [1, -2, -1], [-1, 2, 1]])
def test_r3_preserves_homology(word):
    T = braid_tangle(3, word)
    T2 = S("r3", crossings=[0, 1, 2]).apply(T)[0]
    for b in enumerate_matchings(6):
        assert homology(kh_complex(T2, (), b)) == homology(kh_complex(T, (), b))


def test_grading_normalization_of_a_kink():
    # a positive kink on the unknot with P = 1 has the homology of the unknot
    T = S("r1_add", edge=1, sign=1).apply(Tangle(loops=[1]))[0]
    assert T.P == 1
    assert homology(KhComplex(T)) == kh("unknot")
