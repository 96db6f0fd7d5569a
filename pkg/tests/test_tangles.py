import pytest
from hypothesis import given, strategies as st

from arckh import library
from arckh.tangles import (Tangle, TangleError, braid_tangle, cap_tangle, closure, compose,
                           crossing_signs, enumerate_matchings, from_json, identity_tangle,
                           is_noncrossing, matching_tangle, mirror, positive_count, to_json,
                           validate)

CATALAN = [1, 1, 2, 5, 14, 42]


@pytest.mark.parametrize("k", range(6))
def test_matchings_are_catalan(k):
    ms = enumerate_matchings(2 * k)
    assert len(ms) == CATALAN[k] and len(set(ms)) == len(ms)
    assert all(is_noncrossing(a) for a in ms)


def test_crossing_matching_rejected():
    assert not is_noncrossing(((1, 3), (2, 4)))


@pytest.mark.parametrize("name", library.DIAGRAMS)
def test_bundled_round_trip(name):
    T = library.diagram(name)
    assert from_json(to_json(T)) == T
    validate(T)


def test_validation_names_offending_edge():
    with pytest.raises(TangleError, match="edge 9"):
        from_json({"n": 0, "crossings": [[1, 2, 2, 9], [1, 3, 3, 4]]})
    with pytest.raises(TangleError, match="even"):
        from_json({"n": 3, "boundary_edges": [1, 1, 2]})


def test_nonplanar_rejected():
    # two crossings glued like a figure that needs a handle
    with pytest.raises(TangleError):
        from_json({"crossings": [[1, 2, 3, 4], [1, 3, 2, 4]]})


def test_compose_with_cap_and_identity():
    a = ((1, 2), (3, 4))
    T = identity_tangle(4, start=100)
    S = matching_tangle(a, 4)
    U, _ = compose(T, 0, S)
    assert U.n == 4 and not U.inner and U.N == 0 and not U.loops
    Z, _ = compose(cap_tangle(a, 4, start=50), 0, S)
    assert len(Z.loops) == 2 and Z.is_closed()


def test_compose_arity_mismatch():
    with pytest.raises(TangleError, match="arity"):
        compose(identity_tangle(4, 100), 0, matching_tangle(((1, 2),), 2))


def test_closure_requires_matchings():
    T = matching_tangle(((1, 2),), 2)
    with pytest.raises(TangleError):
        closure(T, (), ((1, 3),))
    assert closure(T, (), ((1, 2),)).N == 0


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=5))
def test_braid_tangles_valid_and_signed(word):
    T = braid_tangle(3, word)
    validate(T)
    assert T.N == len(word) and T.P == sum(g > 0 for g in word)
    assert mirror(T).N == T.N


def test_crossing_signs_of_bundled_knots():
    tref = library.diagram("trefoil")
    signs = crossing_signs(tref)
    assert abs(sum(signs)) == 3
    assert positive_count(library.diagram("hopf")) in (0, 2)


def test_tangle_is_hashable_and_loops_sorted():
    T = Tangle(loops=[3, 1, 2])
    assert T.loops == (1, 2, 3) and hash(T) == hash(Tangle(loops=[1, 2, 3]))
