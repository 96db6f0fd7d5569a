"""The signed cube-of-resolutions complex of a closed diagram.

Generators are pairs ``(v, mask)``: ``v`` is the cube vertex as a bitmask
over the crossings and bit ``i`` of ``mask`` is the label of the ``i``-th
circle of the resolution (0 for 1, 1 for X), circles being sorted by their
id (the minimal atom on the circle).

Gradings: a generator at ``v`` with label degree ``deg`` sits in
``h = N - |v| - P`` and ``q = deg + qshift - |v| + 2N - 3P``.  The edge
``v -> v + e_j`` carries the sign ``(-1)^{#{j' < j : v_j' = 1}}``.
"""

from __future__ import annotations

from .homology import ChainMap, ComplexError, GradedComplex
from .tangles import Tangle, closure, resolution_components
from .tqft import MERGE, SPLIT, TqftVector


def popcount(v):
    return bin(v).count("1")


def _deg(mask, c):
    x = popcount(mask)
    return x - (c - x)


class KhComplex(GradedComplex):
    """Khovanov complex of a closed diagram with integer ``P`` and a q-shift.

    Parameters
    ----------
    cd : ClosedDiagram or closed Tangle
    P : int
    qshift : int
        Extra quantum shift (``n/2`` for closures of ``n``-ended tangles).
    """

    def __init__(self, cd, P=None, qshift=0):
        if isinstance(cd, Tangle):
            if not cd.is_closed():
                raise ComplexError("an open tangle needs capping matchings")
            P = cd.P if P is None else P
            cd = closure(cd)
        P = 0 if P is None else P
        self.cd, self.P, self.qshift = cd, P, qshift
        N = self.N = cd.N
        self.circles, self.where, self.offset = [], [], []
        keys, grades = [], []
        for v in range(1 << N):
            circ, where = resolution_components(cd, v)
            self.circles.append(circ)
            self.where.append(where)
            self.offset.append(len(keys))
            c = len(circ)
            hv = N - popcount(v) - P
            base = qshift - popcount(v) + 2 * N - 3 * P
            for mask in range(1 << c):
                keys.append((v, mask))
                grades.append((hv, base + _deg(mask, c)))
        super().__init__(keys, grades, {})
        self.d = self._differential()

    # -- generator helpers -------------------------------------------------

    def gen(self, v, labels):
        """Index of the generator at ``v`` with ``labels`` (circle id -> 0/1)."""
        circ = self.circles[v]
        mask = 0
        for i, c in enumerate(circ):
            if labels[c]:
                mask |= 1 << i
        return self.offset[v] + mask

    def labeling(self, idx):
        """``(v, {circle id: label})`` of a generator index."""
        v, mask = self.keys[idx]
        return v, {c: (mask >> i) & 1 for i, c in enumerate(self.circles[v])}

    def circle_of(self, v, atom):
        return self.circles[v][self.where[v][atom]]

    # -- differential ------------------------------------------------------

    def _differential(self):
        N, cd = self.N, self.cd
        d = {}
        for v in range(1 << N):
            cv, wv = self.circles[v], self.where[v]
            off_v = self.offset[v]
            for j in range(N):
                if (v >> j) & 1:
                    continue
                w = v | (1 << j)
                sign = -1 if popcount(v & ((1 << j) - 1)) % 2 else 1
                ww = self.where[w]
                x = cd.crossings[j]
                A, B = wv[x[0]], wv[x[2]]
                # unaffected circles: position in v -> position in w
                carry = [(i, ww[c]) for i, c in enumerate(cv) if i not in (A, B)]
                off_w = self.offset[w]
                for mask in range(1 << len(cv)):
                    base = 0
                    for i, k in carry:
                        if (mask >> i) & 1:
                            base |= 1 << k
                    la, lb = (mask >> A) & 1, (mask >> B) & 1
                    if A != B:
                        m = MERGE.get((la, lb))
                        if m is None:
                            continue
                        tgt = {base | (m << ww[x[0]]): sign}
                    else:
                        k0, k1 = ww[x[0]], ww[x[1]]
                        tgt = {base | (a << k0) | (b << k1): sign for a, b in SPLIT[la]}
                    col = d.setdefault(off_v + mask, {})
                    for t, s in tgt.items():
                        col[off_w + t] = col.get(off_w + t, 0) + s
        return d


def kh_complex(T, caps_inner=(), cap_outer=(), P=None):
    """Khovanov complex of a tangle closed by the given matchings.

    The quantum shift is ``n/2`` for an ``n``-ended outer boundary.
    """
    P = T.P if P is None else P
    return KhComplex(closure(T, caps_inner, cap_outer), P, T.n // 2)


def khovanov_homology(T, caps_inner=(), cap_outer=(), P=None):
    from .homology import homology

    return homology(kh_complex(T, caps_inner, cap_outer, P))


# ---------------------------------------------------------------------------
# maps that act vertex by vertex through the TQFT


def vertex_map(src, tgt, fn, vmap=None, bidegree=(0, 0), sign=None):
    """Chain-level map assembled from per-vertex TQFT operations.

    Parameters
    ----------
    src, tgt : KhComplex
    fn : callable
        ``fn(v, w, vec)`` takes a :class:`TqftVector` on the circles of
        ``src`` at ``v`` and returns a vector on the circles of ``tgt`` at
        ``w``.
    vmap : callable, optional
        Source vertex -> target vertex (identity by default).
    sign : callable, optional
        Per-vertex sign.
    """
    m = {}
    for v in range(1 << src.N):
        w = v if vmap is None else vmap(v)
        if w is None:
            continue
        s = 1 if sign is None else sign(v)
        circ = src.circles[v]
        for mask in range(1 << len(circ)):
            lab = {c: (mask >> i) & 1 for i, c in enumerate(circ)}
            out = fn(v, w, TqftVector.generator(lab))
            col = {}
            for key, coef in out.terms.items():
                labels = dict(zip(out.circles, key))
                col[tgt.gen(w, labels)] = s * coef
            if col:
                m[src.offset[v] + mask] = col
    return ChainMap(src, tgt, m, bidegree)


def carried(src, tgt, v, w, touched=()):
    """Rename map from source circle ids to target circle ids at (v, w).

    A circle is carried through when its id atom lies in the target diagram.
    Circles listed in ``touched`` are skipped.
    """
    out = {}
    for c in src.circles[v]:
        if c in touched:
            continue
        out[c] = tgt.circle_of(w, c)
    return out


def rename(vec, mapping):
    """Rename circles of a vector (ids missing from ``mapping`` are kept)."""
    circ = tuple(mapping.get(c, c) for c in vec.circles)
    return TqftVector(circ, dict(vec.terms))
