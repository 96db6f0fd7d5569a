import pytest

from arckh import library
from arckh import verification as V
from arckh.moves import Movie, MovieError, S


@pytest.mark.parametrize("suite", V.SUITES)
def test_suite_passes(suite):
    (r,) = V.run(suite)
    assert r["suite"] == suite
    assert r["passed"], [c for c in r["cases"] if not c["passed"]]


def test_run_all_lists_every_suite():
    assert [r["suite"] for r in V.run("all")] == list(V.SUITES)


def test_unknown_suite():
    with pytest.raises(KeyError):
        V.run("nope")


def test_threads_env(monkeypatch):
    monkeypatch.setenv("KH_THREADS", "3")
    assert V.threads() == 3
    monkeypatch.setenv("KH_THREADS", "junk")
    assert V.threads() == 1


def test_parallel_matches_serial(monkeypatch):
    monkeypatch.setenv("KH_THREADS", "2")
    par = V.run("all")
    monkeypatch.setenv("KH_THREADS", "1")
    ser = V.run("all")
    assert [r["passed"] for r in par] == [r["passed"] for r in ser]


def test_compare_identical_movies():
    m = library.movie("torus")
    r = V.compare_movies(m, m)
    assert r["status"] == "equal_up_to_sign" and r["sign"] == 1


def test_compare_detects_dot():
    m = library.movie("birth")
    dotted = Movie(m.start, list(m.steps) + [S("dot", edge=m.end().loops[0])])
    assert V.compare_movies(m, dotted)["status"] == "different"


@pytest.mark.parametrize("case", V.corrupted_cases(), ids=lambda c: c[0])
def test_corrupted_controls_fail(case):
    name, m1, m2 = case
    assert V.compare_movies(m1, m2)["status"] == "different"


def test_single_cap_flip_has_no_global_sign():
    r = V._single_cap_flip()
    assert r["status"] == "different" and r["passed"]


def test_ribbon_rejects_deaths():
    m = library.movie("death")
    with pytest.raises(MovieError):
        V.check_ribbon_retraction(m, m)


def test_ribbon_retraction():
    r = V.check_ribbon_retraction(library.movie("ribbon_unknot"),
                                  library.movie("ribbon_unknot_reverse"))
    assert r["passed"]


def test_gluing_pairs_count_and_sizes():
    pairs = V.random_gluing_pairs(20, seed=5)
    assert len(pairs) == 20
    for T, S_, b in pairs:
        assert T.N + S_.N <= 3
        assert S_.n in (2, 4) and T.inner == (S_.n,)
        assert len(b) == T.n // 2
