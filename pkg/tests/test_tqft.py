import pytest
from hypothesis import given, strategies as st

from arckh.tqft import (ONE, X, Label, LabeledOneManifold, TqftVector, apply_birth,
                        apply_death, apply_dot, apply_merge, apply_split)


def gen(**lab):
    return TqftVector.generator(lab)


def test_label_gradings():
    assert Label.ONE.qdeg == -1 and Label.X.qdeg == 1
    assert LabeledOneManifold(("a", "b"), (ONE, X)).qdeg == 0


@pytest.mark.parametrize("a,b,out", [(ONE, ONE, {"c": ONE}), (ONE, X, {"c": X}),
                                     (X, ONE, {"c": X}), (X, X, None)])
def test_merge_table(a, b, out):
    v = apply_merge(gen(a=a, b=b), "a", "b", "c")
    assert v == (gen(**out) if out else TqftVector(("c",)))


def test_split_table():
    assert apply_split(gen(a=ONE), "a", "b", "c") == (gen(b=ONE, c=X) + gen(b=X, c=ONE))
    assert apply_split(gen(a=X), "a", "b", "c") == gen(b=X, c=X)


def test_unit_counit_dot():
    assert apply_birth(TqftVector((), {(): 1}), "a") == gen(a=ONE)
    assert apply_death(gen(a=X), "a") == TqftVector((), {(): 1})
    assert apply_death(gen(a=ONE), "a") == TqftVector()
    assert apply_dot(gen(a=ONE), "a") == gen(a=X)
    assert apply_dot(gen(a=X), "a") == TqftVector(("a",))


def test_bad_inputs():
    with pytest.raises(ValueError):
        apply_merge(gen(a=ONE), "a", "a", "b")
    with pytest.raises(KeyError):
        apply_dot(gen(a=ONE), "zz")
    with pytest.raises(ValueError):
        apply_birth(gen(a=ONE), "a")
    with pytest.raises(ValueError):
        TqftVector(("a", "a"))


labels = st.sampled_from([ONE, X])


@given(labels, labels, labels)
def test_merge_associative(a, b, c):
    v = gen(p=a, q=b, r=c)
    left = apply_merge(apply_merge(v, "p", "q", "s"), "s", "r", "t")
    right = apply_merge(apply_merge(v, "q", "r", "s"), "p", "s", "t")
    assert left == right


@given(labels)
def test_split_coassociative_and_counital(a):
    v = gen(p=a)
    left = apply_split(apply_split(v, "p", "s", "r"), "s", "p1", "q1")
    right = apply_split(apply_split(v, "p", "p1", "s"), "s", "q1", "r")
    assert left == right
    assert apply_death(apply_split(v, "p", "s", "t"), "t") == gen(s=a)


@given(labels, labels)
def test_frobenius_relation(a, b):
    # split after merge equals merge after split on one side
    v = gen(p=a, q=b)
    lhs = apply_split(apply_merge(v, "p", "q", "m"), "m", "u", "w")
    rhs = apply_merge(apply_split(v, "p", "u", "s"), "s", "q", "w")
    assert lhs == rhs


@given(labels, labels)
def test_merge_and_split_raise_label_degree_by_one(a, b):
    # with the -|v| shift of the cube this gives the saddle degree +1
    v = gen(p=a, q=b)
    d = a.qdeg + b.qdeg
    assert apply_merge(v, "p", "q", "m").qdegrees() <= {d + 1}
    assert apply_split(gen(p=a), "p", "s", "t").qdegrees() == {a.qdeg + 1}
