import pytest
from hypothesis import given, strategies as st

from arckh.homology import (ChainMap, ComplexError, GradedComplex, HomologyTable, cone,
                            direct_sum, eliminate, equal_up_to_sign_and_homotopy,
                            hom_complex, homology, homotopy, identity_map, is_nullhomotopic,
                            prime_power_parts, tensor, unit_complex, zero_map)


def two_term(a, h=1, q=0):
    """Z --a--> Z from degree h to h - 1."""
    return GradedComplex(["x", "y"], [(h, q), (h - 1, q)], {0: {1: a}} if a else {})


def test_torsion_and_free_parts():
    H = homology(two_term(12))
    assert H.groups == {(0, 0): (0, (3, 4))}
    assert homology(two_term(1)).groups == {}
    assert homology(two_term(0)).groups == {(1, 0): (1, ()), (0, 0): (1, ())}


def test_prime_power_parts():
    assert prime_power_parts(12) == [3, 4]
    assert prime_power_parts(1) == []
    assert prime_power_parts(2 * 2 * 2 * 9 * 5) == [5, 8, 9]


def test_check_rejects_bad_differentials():
    bad = GradedComplex(["a", "b"], [(1, 0), (0, 2)], {0: {1: 1}})
    with pytest.raises(ComplexError):
        bad.check()
    nonzero_square = GradedComplex(["a", "b", "c"], [(2, 0), (1, 0), (0, 0)],
                                   {0: {1: 1}, 1: {2: 1}})
    with pytest.raises(ComplexError):
        nonzero_square.check()


def test_table_json_and_shift():
    H = HomologyTable({(0, 1): (1, ()), (1, 3): (0, (2,))})
    assert H.to_json() == [{"h": 0, "q": 1, "free": 1}, {"h": 1, "q": 3, "free": 0, "torsion": [2]}]
    assert HomologyTable.from_json(H.to_json()) == H
    assert H.shift(1, -2).groups == {(1, -1): (1, ()), (2, 1): (0, (2,))}
    assert H.euler() == {1: 1}


def test_cone_of_identity_is_acyclic():
    C = direct_sum(two_term(0), two_term(3, h=2, q=1))
    assert homology(cone(identity_map(C))).groups == {}


def test_cone_of_zero_is_sum():
    C, D = two_term(2), two_term(0, h=0, q=2)
    H = homology(cone(zero_map(C, D)))
    assert H == HomologyTable({**homology(D).groups, **homology(C).shift(1, 0).groups})


def test_tensor_kunneth_free():
    A = GradedComplex(["a"], [(1, 1)])
    B = direct_sum(two_term(0), two_term(5, h=3))
    assert homology(tensor(A, B)) == homology(B).shift(1, 1)
    tensor(B, B).check()


def test_hom_complex_contains_identity_cycle():
    C = two_term(0)
    H = hom_complex(C, C)
    H.check()
    assert homology(H)[(0, 0)][0] == 2


def test_nullhomotopy_and_signs():
    C = two_term(1)
    f = identity_map(C)
    assert is_nullhomotopic(f)
    assert homotopy(f) is not None
    D = two_term(0)
    g = identity_map(D)
    assert not is_nullhomotopic(g)
    assert equal_up_to_sign_and_homotopy(g, g.scaled(-1)) == -1
    assert equal_up_to_sign_and_homotopy(g, g) == 1
    assert equal_up_to_sign_and_homotopy(g, g.scaled(2)) == 0


def test_chain_map_check():
    C = two_term(2)
    ok = ChainMap(C, C, {0: {0: 1}, 1: {1: 1}})
    assert ok.is_chain_map()
    bad = ChainMap(C, C, {0: {0: 1}})
    assert not bad.is_chain_map()


@st.composite
def random_complexes(draw):
    """Tensor products and sums of random two-term complexes."""
    parts = []
    for _ in range(draw(st.integers(1, 3))):
        a, b = draw(st.integers(-4, 4)), draw(st.integers(-4, 4))
        C = tensor(two_term(a, h=draw(st.integers(0, 2))), two_term(b, q=draw(st.integers(-1, 1))))
        parts.append(C)
    return direct_sum(*parts)


@given(random_complexes())
def test_elimination_is_a_deformation_retraction(C):
    C.check()
    R, F, G = eliminate(C)
    R.check()
    assert F.is_chain_map() and G.is_chain_map()
    assert (G @ F) == identity_map(R)
    assert is_nullhomotopic(F @ G - identity_map(C))
    assert homology(R) == homology(C)


@given(random_complexes())
def test_euler_characteristic_of_homology(C):
    assert homology(C).euler() == C.euler()


def test_unit_complex():
    assert homology(unit_complex(2, 3)).groups == {(2, 3): (1, ())}
