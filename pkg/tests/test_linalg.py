from hypothesis import given, strategies as st

from arckh import linalg


def mats(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


@given(mats())
def test_smith_factorization(A):
    m, n = len(A), len(A[0])
    D, U, Ui, V, Vi = linalg.smith(A, m, n)
    UAV = linalg.matmul(linalg.matmul(U, A), V)
    for i in range(m):
        for j in range(n):
            assert UAV[i][j] == (D[i] if i == j else 0)
    assert linalg.matmul(U, Ui) == linalg.identity(m)
    assert linalg.matmul(V, Vi) == linalg.identity(n)


@given(mats())
def test_kernel_is_saturated_kernel(A):
    n = len(A[0])
    K, L = linalg.kernel(A, n)
    k = len(K[0]) if K and K[0] else 0
    assert k == n - linalg.rank(A)
    if k:
        assert all(x == 0 for row in linalg.matmul(A, K) for x in row)
        assert linalg.matmul(L, K) == linalg.identity(k)


@given(mats(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_finds_solutions_of_consistent_systems(A, x):
    n = len(A[0])
    b = linalg.matvec(A, x[:n])
    y = linalg.solve(A, b, n)
    assert y is not None and linalg.matvec(A, y) == b


def test_solve_detects_divisibility_obstruction():
    assert linalg.solve([[2]], [1], 1) is None
    assert linalg.solve([[2]], [4], 1) == [2]


def test_quotient_factors():
    proj, lift, factors = linalg.quotient([[2, 0], [0, 3]], 2)
    assert sorted(factors) == [2, 3] and proj == []
    proj, lift, factors = linalg.quotient([[1, 1]], 2)
    assert factors == [1] and len(proj) == 1
