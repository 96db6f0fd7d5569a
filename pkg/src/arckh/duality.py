"""Hom complexes of tangle modules over arc algebras and the mirror duality.

For an ``(m; 0)``-tangle ``T`` the right ``C(m)``-module ``c -> C(T)(c; )``
is compared with the mirror ``(; m)``-tangle ``T-bar`` carrying ``N - P``:
the complex of module maps into the free module ``c -> C(m)(c, e)`` has the
homology of ``C(T-bar)( ; e)`` with the quantum grading moved by ``m/2``.

Module maps are block-diagonal families ``f_c`` commuting with the action.
The constraint is linear and preserves bidegree, so each bidegree of the Hom
complex is the saturated kernel of an integer matrix.
"""

from __future__ import annotations

from . import linalg
from .arc_algebra import TangleMultiModule, arc_algebra, gluing, picture
from .homology import ComplexError, GradedComplex, _add, homology
from .tangles import Tangle, TangleError


def mirror_annular(T):
    """The mirror ``(; m)``-tangle of an ``(m; 0)``-tangle, with ``P`` replaced by ``N - P``.

    The inner boundary circle becomes the outer one; reflecting the plane
    reverses the cyclic order of its points.
    """
    if T.n or len(T.inner) != 1:
        raise TangleError("duality needs a tangle with one inner disk and no outer points")
    xs = [(c[0], c[3], c[2], c[1]) for c in T.crossings]
    return Tangle(T.inner[0], (), xs, tuple(T.inner_boundary[0]), (), T.N - T.P, T.loops)


class ModuleHom:
    """The complex of module maps between two families of pictures.

    Parameters
    ----------
    objects : list
        Index set (crossingless matchings).
    src, tgt : callable
        ``c -> Picture``.
    act_src, act_tgt : callable
        ``(c, c2) -> (fn, alpha_dim)`` where ``fn(x, alpha)`` is the action of
        basis element ``alpha`` sending generator ``x`` over ``c`` to a vector
        over ``c2``.
    """

    def __init__(self, objects, src, tgt, act_src, act_tgt):
        self.objects = list(objects)
        self.S = {c: src(c).K for c in self.objects}
        self.T = {c: tgt(c).K for c in self.objects}
        self.act_src, self.act_tgt = act_src, act_tgt
        self._vars()
        self.complex = self._build()

    def _vars(self):
        """Elementary maps ``(c, i, k)``: generator ``i`` of ``S[c]`` to ``k`` of ``T[c]``."""
        self.vars, self.vgrade = [], []
        for c in self.objects:
            S, T = self.S[c], self.T[c]
            for i, gi in enumerate(S.grades):
                for k, gk in enumerate(T.grades):
                    self.vars.append((c, i, k))
                    self.vgrade.append((gk[0] - gi[0], gk[1] - gi[1]))
        self.vindex = {v: n for n, v in enumerate(self.vars)}
        self.by = {}
        for n, g in enumerate(self.vgrade):
            self.by.setdefault(g, []).append(n)

    def _constraints(self, hq):
        """Rows ``f_{c2}(x . a) - f_c(x) . a`` restricted to variables of bidegree ``hq``."""
        vs = self.by[hq]
        pos = {n: k for k, n in enumerate(vs)}
        rows = {}
        for c in self.objects:
            for c2 in self.objects:
                fs, dim_a = self.act_src(c, c2)
                ft, _ = self.act_tgt(c, c2)
                S, T2 = self.S[c], self.T[c2]
                for a in range(dim_a):
                    for x in range(S.dim):
                        # f_{c2}(x . a): coefficient of generator y of S[c2] times var (c2, y, k)
                        for y, e in fs(x, a).items():
                            for k in range(T2.dim):
                                n = self.vindex[(c2, y, k)]
                                if n in pos:
                                    row = rows.setdefault((c, c2, a, x, k), {})
                                    _add(row, pos[n], e)
                        # f_c(x) . a: var (c, x, k) contributes (k . a)
                        for k in range(self.T[c].dim):
                            n = self.vindex[(c, x, k)]
                            if n not in pos:
                                continue
                            for t, e in ft(k, a).items():
                                row = rows.setdefault((c, c2, a, x, t), {})
                                _add(row, pos[n], -e)
        return [r for r in rows.values() if r], len(vs)

    def _apply_d(self, vec):
        """``df = d_T f - (-1)^{|f|} f d_S`` for ``f`` in full variable coordinates."""
        out = {}
        for n, e in vec.items():
            c, i, k = self.vars[n]
            h = self.vgrade[n][0]
            s = -1 if h % 2 else 1
            T = self.T[c]
            for k2, a in T.d.get(k, {}).items():
                _add(out, self.vindex[(c, i, k2)], e * a)
            for j, a in self._rows(c).get(i, {}).items():
                _add(out, self.vindex[(c, j, k)], -s * e * a)
        return out

    def _rows(self, c):
        if not hasattr(self, "_rowcache"):
            self._rowcache = {}
        if c not in self._rowcache:
            rows = {}
            for j, col in self.S[c].d.items():
                for i, a in col.items():
                    rows.setdefault(i, {})[j] = a
            self._rowcache[c] = rows
        return self._rowcache[c]

    def _build(self):
        self.basis = {}
        keys, grades = [], []
        for hq in sorted(self.by):
            rows, nv = self._constraints(hq)
            A = [[r.get(k, 0) for k in range(nv)] for r in rows]
            K, L = linalg.kernel(A, nv)
            start = len(keys)
            for k in range(len(K[0]) if K else 0):
                keys.append((hq, k))
                grades.append(hq)
            self.basis[hq] = (K, L, start)
        d = {}
        for hq, (K, L, start) in self.basis.items():
            tgt = (hq[0] - 1, hq[1])
            vs = self.by[hq]
            ncol = len(K[0]) if K else 0
            for k in range(ncol):
                vec = {vs[r]: K[r][k] for r in range(len(vs)) if K[r][k]}
                dv = self._apply_d(vec)
                if not dv:
                    continue
                if tgt not in self.basis:
                    raise ComplexError("differential leaves the Hom complex")
                K2, L2, start2 = self.basis[tgt]
                vs2 = self.by[tgt]
                pos2 = {n: r for r, n in enumerate(vs2)}
                x = [0] * len(vs2)
                for n, e in dv.items():
                    x[pos2[n]] = e
                coords = linalg.matvec(L2, x)
                back = linalg.matvec(K2, coords) if K2 and K2[0] else [0] * len(vs2)
                if back != x:
                    raise ComplexError("module maps are not closed under the differential")
                col = {start2 + r: a for r, a in enumerate(coords) if a}
                if col:
                    d[start + k] = col
        return GradedComplex(keys, grades, d)

    def cycle_of(self, f):
        """Coordinates of a family ``{c: {i: {k: coef}}}`` in the Hom basis (or ``None``)."""
        out = {}
        for c, m in f.items():
            for i, col in m.items():
                for k, a in col.items():
                    _add(out, self.vindex[(c, i, k)], a)
        grades = {self.vgrade[n] for n in out}
        if len(grades) > 1:
            raise ComplexError("map is not homogeneous")
        if not grades:
            return {}
        hq = grades.pop()
        K, L, start = self.basis[hq]
        vs = self.by[hq]
        pos = {n: r for r, n in enumerate(vs)}
        x = [0] * len(vs)
        for n, a in out.items():
            x[pos[n]] = a
        coords = linalg.matvec(L, x)
        if (linalg.matvec(K, coords) if K and K[0] else [0] * len(vs)) != x:
            return None
        return {start + r: a for r, a in enumerate(coords) if a}


def dual_hom(T, e):
    """``Hom_{C(m)}(C(T), C(m)(., e))`` for an ``(m; 0)``-tangle ``T``."""
    m = T.inner[0]
    alg = arc_algebra(m)
    M = TangleMultiModule(T)

    def src(c):
        return M[((c,), ())]

    def tgt(c):
        return alg.hom(c, e)

    def act_src(c, c2):
        g = gluing(M[((c,), ())], 0, alg.hom(c2, c), "outer")
        return g.apply, alg.dim(c2, c)

    def act_tgt(c, c2):
        g = alg.compose(c, e, c2)
        return g.apply, alg.dim(c2, c)

    return ModuleHom(alg.objects, src, tgt, act_src, act_tgt)


def check_duality(T):
    """Compare ``H(Hom(C(T), C(m)(., e)))`` with ``Kh(T-bar; e)`` shifted by ``-m/2`` in q.

    Returns ``{e: (hom_table, mirror_table_shifted, equal)}``.
    """
    m = T.inner[0]
    Tb = mirror_annular(T)
    out = {}
    for e in arc_algebra(m).objects:
        H = homology(dual_hom(T, e).complex)
        Hm = homology(picture(Tb, (), e).K).shift(0, m // 2)
        out[e] = (H, Hm, H == Hm)
    return out


def dualize(T, e):
    """Degreewise comparison of the Hom complex with the mirror complex.

    Returns ``{(h, q): (rank of Hom, rank of C(T-bar)_{h, q - m/2})}``; the
    two chain groups are free of equal rank in every bidegree.
    """
    m = T.inner[0]
    Hm = dual_hom(T, e).complex
    C = picture(mirror_annular(T), (), e).K
    out = {}
    for hq in set(Hm.support()) | {(h, q + m // 2) for h, q in C.support()}:
        out[hq] = (len(Hm.basis(*hq)), len(C.basis(hq[0], hq[1] - m // 2)))
    return out
