"""Independent bracket oracle for the graded Euler characteristic.

The unnormalized bracket is evaluated by skein recursion on the crossings,
``<D> = <D_0> - q <D_1>`` and ``<k circles> = (q + 1/q)^k``, without any
chain-level machinery.  Laurent polynomials are dicts ``{exponent: coef}``.
"""

from __future__ import annotations

from functools import lru_cache

from .tangles import Tangle, TangleError, closure, mirror_closed


def _mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _add(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _circle_count(pairs, atoms):
    parent = {a: a for a in atoms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(a) for a in atoms})


def bracket(cd):
    """Unnormalized bracket of a closed diagram, recursing crossing by crossing."""
    atoms = tuple(sorted(cd.atoms(), key=lambda e: (type(e).__name__, e)))
    xs = cd.crossings
    loop = {0: 1}
    unknot = {1: 1, -1: 1}

    @lru_cache(maxsize=None)
    def rec(j, pairs):
        if j == len(xs):
            k = _circle_count(pairs, atoms)
            out = loop
            for _ in range(k):
                out = _mul(out, unknot)
            return out
        c = xs[j]
        p0 = pairs + ((c[0], c[1]), (c[2], c[3]))
        p1 = pairs + ((c[0], c[3]), (c[1], c[2]))
        return _add(rec(j + 1, p0), _mul({1: 1}, rec(j + 1, p1)), -1)

    return rec(0, tuple(cd.junctions))


def jones_oracle(L, P=None, qshift=0):
    """Laurent polynomial that the graded Euler characteristic must equal.

    It is the bracket of the mirror diagram, normalized with ``n_- = P`` and
    ``n_+ = N - P`` for the mirror, times ``q^qshift``.

    Parameters
    ----------
    L : ClosedDiagram or closed Tangle
    P : int, optional
        Defaults to ``L.P`` for tangles.
    """
    if isinstance(L, Tangle):
        if not L.is_closed():
            raise TangleError("the bracket oracle needs a closed diagram")
        P = L.P if P is None else P
        L = closure(L)
    P = 0 if P is None else P
    N = L.N
    br = bracket(mirror_closed(L))
    npos, nneg = N - P, P
    s = -1 if nneg % 2 else 1
    return {e + npos - 2 * nneg + qshift: s * c for e, c in sorted(br.items())}
