# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse integer kernels.

Same functions and signatures as :mod:`arckh._kernels_py`.  Coefficients stay
Python integers so that no overflow is possible; the speedup comes from typed
loops and C-level dict access.
"""


cdef dict _rows_of(dict cols):
    cdef dict rows = {}
    cdef dict col
    for j, col in cols.items():
        for i, c in col.items():
            r = rows.get(i)
            if r is None:
                r = {}
                rows[i] = r
            (<dict>r)[j] = c
    return rows


def eliminate_units(cols):
    """Gaussian elimination of unit entries in a chain complex differential.

    Returns ``(cols, removed)`` exactly as the pure-Python version.
    """
    cdef dict cs = {j: dict(c) for j, c in cols.items()}
    cdef dict rows = _rows_of(cs)
    cdef set removed = set()
    cdef bint progress = True
    while progress:
        progress = False
        for j in list(cs):
            i = _eliminate_at(cs, rows, j)
            if i is not None:
                removed.add(j)
                removed.add(i)
                progress = True
    return {j: c for j, c in cs.items() if c}, removed


cdef object _eliminate_at(dict cols, dict rows, object j):
    cdef dict col = cols.get(j)
    cdef dict ck, rr
    cdef Py_ssize_t w, best = -1
    if not col:
        return None
    piv = None
    for i, c in col.items():
        if c == 1 or c == -1:
            w = len(<dict>rows[i])
            if best < 0 or w < best:
                piv, best = i, w
    if piv is None:
        return None
    i = piv
    u = col[i]
    gamma = [(r, c) for r, c in col.items() if r != i]
    delta = [(k, c) for k, c in (<dict>rows[i]).items() if k != j]
    for gen in (j, i):
        for r in cols.pop(gen, {}):
            rr = rows.get(r)
            if rr is not None:
                rr.pop(gen, None)
        for k in rows.pop(gen, {}):
            ck = cols.get(k)
            if ck is not None:
                ck.pop(gen, None)
    for k, dk in delta:
        ck = cols.get(k)
        if ck is None:
            ck = {}
            cols[k] = ck
        for r, gr in gamma:
            v = ck.get(r, 0) - gr * u * dk
            if v:
                ck[r] = v
                rr = rows.get(r)
                if rr is None:
                    rr = {}
                    rows[r] = rr
                rr[k] = v
            else:
                ck.pop(r, None)
                (<dict>rows[r]).pop(k, None)
    return i


def diagonalize(cols):
    """Nonzero diagonal entries of a diagonal form (same as the pure version)."""
    cdef dict cs = {j: dict(c) for j, c in cols.items() if c}
    cdef dict rows = _rows_of(cs)
    cdef list diag = []
    cdef bint clean
    cdef dict col
    while cs:
        piv = None
        for j, col in cs.items():
            for i, c in col.items():
                a = abs(c)
                if piv is None or a < piv[0] or (a == piv[0] and (j, i) < piv[1:]):
                    piv = (a, j, i)
                    if a == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        _, j, i = piv
        p = cs[j][i]
        clean = True
        for r, c in list((<dict>cs[j]).items()):
            if r == i:
                continue
            q = c // p
            if c - q * p:
                clean = False
            if q:
                _add_row(cs, rows, r, i, -q)
        for k, c in list((<dict>rows[i]).items()):
            if k == j:
                continue
            q = c // p
            if c - q * p:
                clean = False
            if q:
                _add_col(cs, rows, k, j, -q)
        if clean and len(<dict>cs[j]) == 1 and len(<dict>rows[i]) == 1:
            diag.append(abs(p))
            del cs[j]
            del rows[i]
        cs = {k: c for k, c in cs.items() if c}
        rows = {k: c for k, c in rows.items() if c}
    return diag


cdef void _add_row(dict cols, dict rows, object r, object i, object f):
    cdef dict rr = rows.get(r)
    if rr is None:
        rr = {}
        rows[r] = rr
    for k, c in (<dict>rows[i]).items():
        v = rr.get(k, 0) + f * c
        if v:
            rr[k] = v
            (<dict>cols[k])[r] = v
        else:
            rr.pop(k, None)
            (<dict>cols[k]).pop(r, None)


cdef void _add_col(dict cols, dict rows, object k, object j, object f):
    cdef dict ck = cols.get(k)
    if ck is None:
        ck = {}
        cols[k] = ck
    for r, c in (<dict>cols[j]).items():
        v = ck.get(r, 0) + f * c
        if v:
            ck[r] = v
            (<dict>rows[r])[k] = v
        else:
            ck.pop(r, None)
            (<dict>rows[r]).pop(k, None)
