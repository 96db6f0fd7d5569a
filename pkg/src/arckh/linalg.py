"""Dense exact integer linear algebra for small systems.

Matrices are lists of row lists of Python ints.  Everything here is exact;
it is used for homotopy solving, integer kernels and lattice quotients,
where the matrices have already been shrunk by unit elimination.
"""

from __future__ import annotations


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = zeros(len(A), n)
    for i, row in enumerate(A):
        o = out[i]
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        o[j] += a * b
    return out


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def smith(A, nrows=None, ncols=None):
    """Diagonalize ``A`` by unimodular operations.

    Returns ``(D, U, Uinv, V, Vinv)`` with ``U A V = D``.  ``D`` is returned
    as the list of its diagonal entries (length ``min(m, n)``, zeros last).
    The entries are not normalized to divide each other.
    """
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    M = [list(r) for r in A] if A else zeros(m, n)
    U, Ui, V, Vi = identity(m), identity(m), identity(n), identity(n)

    def swap_rows(a, b):
        for X in (M, U):
            X[a], X[b] = X[b], X[a]
        for r in Ui:
            r[a], r[b] = r[b], r[a]

    def swap_cols(a, b):
        for X in (M, V):
            for r in X:
                r[a], r[b] = r[b], r[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def add_row(r, t, f):  # row_r += f row_t
        for X in (M, U):
            xr, xt = X[r], X[t]
            for j, v in enumerate(xt):
                if v:
                    xr[j] += f * v
        for row in Ui:  # Ui <- Ui E^-1: col_t -= f col_r
            if row[r]:
                row[t] -= f * row[r]

    def add_col(k, t, f):  # col_k += f col_t
        for X in (M, V):
            for row in X:
                if row[t]:
                    row[k] += f * row[t]
        vt, vk = Vi[t], Vi[k]  # Vi <- E^-1 Vi: row_t -= f row_k
        for j, v in enumerate(vk):
            if v:
                vt[j] -= f * v

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = M[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = M[t][t]
            dirty = False
            for r in range(t + 1, m):
                if M[r][t]:
                    q = M[r][t] // p
                    if q:
                        add_row(r, t, -q)
                    if M[r][t]:
                        dirty = True
            for k in range(t + 1, n):
                if M[t][k]:
                    q = M[t][k] // p
                    if q:
                        add_col(k, t, -q)
                    if M[t][k]:
                        dirty = True
            if not dirty:
                break
            # move a smaller remainder into the pivot position
            best = None
            for r in range(t, m):
                if M[r][t] and (best is None or abs(M[r][t]) < best[0]):
                    best = (abs(M[r][t]), r, t)
            for k in range(t, n):
                if M[t][k] and (best is None or abs(M[t][k]) < best[0]):
                    best = (abs(M[t][k]), t, k)
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
        t += 1
    D = [M[i][i] for i in range(min(m, n))]
    return D, U, Ui, V, Vi


def rank(A):
    D = smith(A)[0]
    return sum(1 for d in D if d)


def solve(A, b, ncols=None):
    """An integer solution of ``A x = b`` or ``None`` if there is none."""
    m = len(A)
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    if m == 0:
        return [0] * n
    D, U, _, V, _ = smith(A, m, n)
    ub = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i] if i < len(D) else 0
        if d:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return matvec(V, y)


def kernel(A, ncols):
    """Saturated integer kernel of ``A``.

    Returns ``(K, L)``: ``K`` is an ``ncols x k`` basis matrix and ``L`` a
    ``k x ncols`` integer left inverse (``L K = I``).
    """
    m = len(A)
    if m == 0:
        return identity(ncols), identity(ncols)
    D, _, _, V, Vi = smith(A, m, ncols)
    r = sum(1 for d in D if d)
    K = [row[r:] for row in V]
    L = Vi[r:]
    return K, L


def quotient(R, dim):
    """Presentation of Z^dim / span(columns of R).

    ``R`` is given as a list of column vectors.  Returns
    ``(proj, lift, factors)``: ``proj`` maps Z^dim onto the free part of the
    quotient, ``lift`` is a section of it, and ``factors`` are the nonzero
    diagonal entries (all 1 iff the span is saturated).
    """
    if not R:
        return identity(dim), identity(dim), []
    A = [[col[i] for col in R] for i in range(dim)]
    D, U, Ui, _, _ = smith(A, dim, len(R))
    nz = [d for d in D if d]
    r = len(nz)
    proj = U[r:]
    lift = [row[r:] for row in Ui]
    return proj, lift, [abs(d) for d in nz]
