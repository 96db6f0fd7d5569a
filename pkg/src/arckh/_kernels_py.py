"""Pure-Python sparse integer kernels (reference implementation).

Matrices are dicts ``{col: {row: coef}}`` with no stored zeros.  The compiled
module ``_kernels`` implements the same functions with the same signatures.
"""


def _rows_of(cols):
    rows = {}
    for j, col in cols.items():
        for i, c in col.items():
            rows.setdefault(i, {})[j] = c
    return rows


def eliminate_units(cols):
    """Gaussian elimination of unit entries in a chain complex differential.

    ``cols`` holds the whole differential of a complex (all homological
    degrees together).  Each unit entry d[i][j] = +-1 removes the pair of
    generators (j, i) and replaces d by eps - gamma phi^-1 delta.

    Returns ``(cols, removed)`` where ``cols`` is the reduced differential on
    the surviving generators and ``removed`` the set of cancelled generators.
    """
    cols = {j: dict(c) for j, c in cols.items()}
    rows = _rows_of(cols)
    removed, progress = set(), True
    while progress:
        progress = False
        for j in list(cols):
            i = _eliminate_at(cols, rows, j)
            if i is not None:
                removed.update((j, i))
                progress = True
    return {j: c for j, c in cols.items() if c}, removed


def _eliminate_at(cols, rows, j):
    col = cols.get(j)
    if not col:
        return None
    piv, best = None, None
    for i, c in col.items():
        if c == 1 or c == -1:
            w = len(rows[i])
            if best is None or w < best:
                piv, best = i, w
    if piv is None:
        return None
    i = piv
    u = col[i]
    gamma = [(r, c) for r, c in col.items() if r != i]
    delta = [(k, c) for k, c in rows[i].items() if k != j]
    # drop generators j and i
    for gen in (j, i):
        for r in cols.pop(gen, {}):
            if r in rows:
                rows[r].pop(gen, None)
        for k in rows.pop(gen, {}):
            if k in cols:
                cols[k].pop(gen, None)
    for k, dk in delta:
        ck = cols.setdefault(k, {})
        for r, gr in gamma:
            v = ck.get(r, 0) - gr * u * dk
            if v:
                ck[r] = v
                rows.setdefault(r, {})[k] = v
            else:
                ck.pop(r, None)
                rows[r].pop(k, None)
    return i


def diagonalize(cols):
    """Nonzero diagonal entries (absolute values) of a diagonal form of a matrix.

    Uses unimodular row and column operations with a minimal-|entry| pivot.
    The entries need not divide one another; their prime-power factors give
    the torsion of the cokernel.
    """
    cols = {j: dict(c) for j, c in cols.items() if c}
    rows = _rows_of(cols)
    diag = []
    while cols:
        # pivot: smallest absolute value, ties by position
        piv = None
        for j, col in cols.items():
            for i, c in col.items():
                a = abs(c)
                if piv is None or a < piv[0] or (a == piv[0] and (j, i) < piv[1:]):
                    piv = (a, j, i)
                    if a == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        _, j, i = piv
        p = cols[j][i]
        clean = True
        # clear column j with row operations
        for r, c in list(cols[j].items()):
            if r == i:
                continue
            q = c // p
            if c - q * p:
                clean = False
            if q:
                _add_row(cols, rows, r, i, -q)
        # clear row i with column operations
        for k, c in list(rows[i].items()):
            if k == j:
                continue
            q = c // p
            if c - q * p:
                clean = False
            if q:
                _add_col(cols, rows, k, j, -q)
        if clean and len(cols[j]) == 1 and len(rows[i]) == 1:
            diag.append(abs(p))
            del cols[j]
            del rows[i]
        # otherwise a smaller remainder now exists; pick again
        cols = {k: c for k, c in cols.items() if c}
        rows = {k: c for k, c in rows.items() if c}
    return diag


def _add_row(cols, rows, r, i, f):
    """row_r += f * row_i"""
    rr = rows.setdefault(r, {})
    for k, c in rows[i].items():
        v = rr.get(k, 0) + f * c
        if v:
            rr[k] = v
            cols[k][r] = v
        else:
            rr.pop(k, None)
            cols[k].pop(r, None)


def _add_col(cols, rows, k, j, f):
    """col_k += f * col_j"""
    ck = cols.setdefault(k, {})
    for r, c in cols[j].items():
        v = ck.get(r, 0) + f * c
        if v:
            ck[r] = v
            rows[r][k] = v
        else:
            ck.pop(r, None)
            rows[r].pop(k, None)
