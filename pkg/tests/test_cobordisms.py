import random

import pytest
from hypothesis import given, strategies as st

from arckh import library
from arckh.arc_algebra import arc_algebra, gluing, picture
from arckh.cobordisms import closed_value, elementary_map, movie_map, neck_cut
from arckh.homology import _add, homology, identity_map, is_nullhomotopic
from arckh.moves import Movie, S, random_tangle
from arckh.tangles import Tangle, TangleError, braid_tangle, matching_tangle
from arckh.verification import compare_movies, cone_identity

E = Tangle()


def test_closed_surfaces():
    assert abs(closed_value(library.movie("torus"))) == 2
    values = [closed_value(library.movie(f"sphere_{k}dots")) for k in range(4)]
    assert values[0] == values[2] == values[3] == 0 and abs(values[1]) == 1


def test_birth_map_hits_q_minus_one():
    f = movie_map(library.movie("birth"))[()]
    assert f.bidegree == (0, -1)
    ind = f.induced()
    assert ind in ({(0, 0): [[1]]}, {(0, 0): [[-1]]})
    assert f.target.grades[next(iter(f.m[0]))] == (0, -1)


def test_saddle_movie_cone_reproduces_table():
    r = cone_identity()
    assert r["passed"]
    m = library.movie("saddle_8_19")
    F = movie_map(m)[()]
    assert F.bidegree == (0, 1) and F.is_chain_map()


@pytest.mark.parametrize("step", [
    S("saddle", edges=[0, 1]), S("birth", id=7), S("dot", edge=0),
    S("r1_add", edge=0, sign=1), S("r1_add", edge=1, sign=-1, side="R"),
    S("r2_add", over=0, over_side="L", under=1, under_side="L")])
def test_elementary_maps_are_chain_maps(step):
    A = matching_tangle(((1, 2), (3, 4)), 4)
    T2, info = step.apply(A)
    for b in ((( 1, 2), (3, 4)), ((1, 4), (2, 3))):
        f = elementary_map(step, A, b)
        f.check()


def _commutes(Ts, Tt, kind, info):
    from arckh.cobordisms import step_map
    n = Ts.n
    alg = arc_algebra(n)
    for b in alg.objects:
        f = step_map(kind, info, Ts, Tt, b)
        for b2 in alg.objects:
            f2 = step_map(kind, info, Ts, Tt, b2)
            gs = gluing(alg.hom(b, b2), 0, picture(Ts, (), b), "inner")
            gt = gluing(alg.hom(b, b2), 0, picture(Tt, (), b), "inner")
            for al in range(alg.dim(b, b2)):
                for x in range(f.source.dim):
                    lhs, rhs = {}, {}
                    for k, e in gs.apply(al, x).items():
                        for t, c in f2.m.get(k, {}).items():
                            _add(lhs, t, e * c)
                    for k, e in f.m.get(x, {}).items():
                        for t, c in gt.apply(al, k).items():
                            _add(rhs, t, e * c)
                    if lhs != rhs:
                        return False
    return True


@given(st.integers(0, 10 ** 6))
def test_step_maps_commute_with_the_action(seed):
    rng = random.Random(seed)
    T = random_tangle(0, 4, rng.randint(0, 2), rng)
    es = sorted(T.edges())
    steps = [S("r1_add", edge=rng.choice(es), sign=rng.choice((1, -1)), side=rng.choice("LR")),
             S("dot", edge=rng.choice(es)), S("birth", id=100)]
    if T.N >= 2:
        steps.append(S("r2_remove", crossings=[0, 1]))
    for st_ in steps:
        try:
            T2, info = st_.apply(T)
        except TangleError:
            continue
        assert _commutes(T, T2, st_.kind, info)


@pytest.mark.parametrize("word", [[1, 2, 1], [-1, 2, 1]])
def test_r3_map_commutes_with_the_action(word):
    T = braid_tangle(3, word)
    T2, info = S("r3", crossings=[0, 1, 2]).apply(T)
    assert _commutes(T, T2, "r3", info)


def test_neck_cutting_on_the_torus():
    m = library.movie("torus")
    plus, minus = neck_cut(m, 2, 2)
    F, P, M = (movie_map(x)[()] for x in (m, plus, minus))
    assert is_nullhomotopic(F - (P + M))
    assert closed_value(plus) + closed_value(minus) == closed_value(m)


def test_compare_movies_sign_and_failure():
    A = matching_tangle(((1, 2), (3, 4)), 4)
    m = Movie(A, [S("r1_add", edge=0, sign=-1), S("r1_remove", crossing=0)])
    r = compare_movies(m, Movie(A, []))
    assert r["status"] == "equal_up_to_sign" and len(r["per_cap"]) == 2
    bad = compare_movies(m.then(S("dot", edge=0)), Movie(A, []))
    assert bad["status"] == "different"


def test_movie_map_identity():
    A = matching_tangle(((1, 2), (3, 4)), 4)
    F = movie_map(Movie(A, []))
    for b in F.caps:
        assert F[b] == identity_map(F[b].source)
        assert homology(F[b].source).total_rank() > 0
