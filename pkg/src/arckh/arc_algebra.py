"""Arc algebras, tangle multi-modules, actions and the gluing map.

Every space here is the Khovanov complex of a closure of a diskular tangle
by crossingless matchings (a :class:`Picture`).  The arc algebra
``C(n)(a, b)`` is the picture of the radial identity tangle with ``a`` in its
inner disk and ``b`` outside, so multiplication, the module actions and the
gluing map are all one operation: insert one picture into an inner disk of
another and contract each pair of facing cap arcs by a saddle.  Saddles are
performed innermost arc first.
"""

from __future__ import annotations

from functools import lru_cache

from . import linalg
from .homology import ComplexError, GradedComplex, _add
from .khovanov import KhComplex, popcount
from .tangles import (TangleError, _UF, _key, closure, compose,
                      enumerate_matchings, identity_tangle, max_edge, offset)
from .tqft import TqftVector, apply_merge, apply_split


def _norm(a):
    return tuple(sorted(tuple(sorted(p)) for p in a))


class Picture:
    """A tangle closed by matchings together with its Khovanov complex.

    Parameters
    ----------
    T : Tangle
    caps_inner : tuple of matchings
        One matching per inner disk.
    cap_outer : matching
        Matching on the outer boundary points.
    """

    def __init__(self, T, caps_inner=(), cap_outer=()):
        self.T = T
        self.caps_inner = tuple(_norm(a) for a in caps_inner)
        self.cap_outer = _norm(cap_outer)
        self.K = KhComplex(closure(T, self.caps_inner, self.cap_outer), T.P, T.n // 2)

    def __repr__(self):
        return f"Picture(N={self.T.N}, n={self.T.n}, inner={self.T.inner}, dim={self.K.dim})"

    def points(self, disk=None):
        return self.T.boundary if disk is None else self.T.inner_boundary[disk]

    def cap(self, disk=None):
        return self.cap_outer if disk is None else self.caps_inner[disk]

    def pairs(self, v, skip=()):
        """Arcs of the resolution at ``v`` except the caps on disks in ``skip``."""
        T = self.T
        out = []
        for j, c in enumerate(T.crossings):
            if (v >> j) & 1:
                out += [(c[0], c[3]), (c[1], c[2])]
            else:
                out += [(c[0], c[1]), (c[2], c[3])]
        out += [(l, l) for l in T.loops]
        disks = [None] + list(range(len(T.inner)))
        for k in disks:
            if k in skip:
                continue
            pts = self.points(k)
            out += [(pts[p - 1], pts[q - 1]) for p, q in self.cap(k)]
        return out


def picture(T, caps_inner=(), cap_outer=()):
    """Cached :class:`Picture` constructor (matchings are normalized)."""
    return _picture(T, tuple(_norm(a) for a in caps_inner), _norm(cap_outer))


@lru_cache(maxsize=4096)
def _picture(T, caps_inner, cap_outer):
    return Picture(T, caps_inner, cap_outer)


def _components(atoms, pairs):
    uf = _UF(atoms)
    for a, b in pairs:
        uf.union(a, b)
    groups = {}
    for a in uf.p:
        groups.setdefault(uf.find(a), []).append(a)
    ids = {r: min(g, key=_key) for r, g in groups.items()}
    return {a: ids[uf.find(a)] for a in uf.p}


def _arc_order(c):
    """Innermost arcs first."""
    return sorted(c, key=lambda pq: (pq[1] - pq[0], pq))


class Gluing:
    """Bilinear map ``X (x) Y -> Z`` inserting picture ``Y`` into disk ``i`` of ``X``.

    ``Y``'s outer cap must equal ``X``'s cap on disk ``i``.  The result ``Z``
    is the picture of ``compose(X.T, i, Y.T)``; edge ids of the side named by
    ``keep`` are preserved, the other side is shifted to avoid collisions.
    ``table[(ix, iy)]`` is the image of a pair of generators.

    The sign ``(-1)^{(N_X - P_X) |v_Y|}`` makes the map a chain map from the
    Koszul tensor product.
    """

    def __init__(self, X, i, Y, keep="outer"):
        if X.T.inner[i] != Y.T.n:
            raise TangleError(f"arity mismatch: disk {i} has {X.T.inner[i]} points, "
                              f"the inserted tangle has {Y.T.n}")
        c = X.cap(i)
        if c != Y.cap_outer:
            raise TangleError("the inserted picture is capped by a different matching")
        self.X, self.i, self.Y = X, i, Y
        if keep == "outer":
            sx, sy = 0, max_edge(X.T) + 1
        else:
            sx, sy = max_edge(Y.T) + 1, 0
        TX = offset(X.T, sx) if sx else X.T
        TY = offset(Y.T, sy) if sy else Y.T
        self.sx, self.sy = sx, sy
        Tz, self.alias = compose(TX, i, TY, keep=keep)
        caps = X.caps_inner[:i] + Y.caps_inner + X.caps_inner[i + 1:]
        self.Z = picture(Tz, caps, X.cap_outer)
        self.c = c
        self.table = self._build()

    def _build(self):
        X, Y, Z, i = self.X, self.Y, self.Z, self.i
        KX, KY, KZ = X.K, Y.K, Z.K
        sx, sy, alias = self.sx, self.sy, self.alias
        ox = lambda a: a + sx if sx else a
        oy = lambda a: a + sy if sy else a
        px = [ox(a) for a in X.points(i)]
        py = [oy(a) for a in Y.points(None)]
        arcs = _arc_order(self.c)
        kx = (X.T.N - X.T.P) % 2
        table = {}
        for vx in range(1 << KX.N):
            bx = [(ox(a), ox(b)) for a, b in X.pairs(vx, skip=(i,))]
            for vy in range(1 << KY.N):
                by = [(oy(a), oy(b)) for a, b in Y.pairs(vy, skip=(None,))]
                base = bx + by
                atoms = {a for p in base for a in p} | set(px) | set(py)
                junc = {}
                for p, q in arcs:
                    junc[("x", p, q)] = (px[p - 1], px[q - 1])
                    junc[("y", p, q)] = (py[p - 1], py[q - 1])
                comp = _components(atoms, base + list(junc.values()))
                ops = []
                for p, q in arcs:
                    ce, cf = comp[px[p - 1]], comp[py[p - 1]]
                    del junc[("x", p, q)], junc[("y", p, q)]
                    junc[("s", p)] = (px[p - 1], py[p - 1])
                    junc[("s", q)] = (px[q - 1], py[q - 1])
                    comp = _components(atoms, base + list(junc.values()))
                    if ce != cf:
                        ops.append(("m", ce, cf, comp[px[p - 1]]))
                    else:
                        ops.append(("s", ce, comp[px[p - 1]], comp[px[q - 1]]))
                w = vx | (vy << KX.N)
                final = {}
                for a, cid in comp.items():
                    final.setdefault(cid, KZ.circle_of(w, alias.get(a, a)))
                sign = -1 if kx and popcount(vy) % 2 else 1
                cx = [ox(c) for c in KX.circles[vx]]
                cy = [oy(c) for c in KY.circles[vy]]
                for mx in range(1 << len(cx)):
                    for my in range(1 << len(cy)):
                        lab = {c: (mx >> k) & 1 for k, c in enumerate(cx)}
                        lab.update({c: (my >> k) & 1 for k, c in enumerate(cy)})
                        vec = TqftVector.generator(lab)
                        for op in ops:
                            if op[0] == "m":
                                vec = apply_merge(vec, op[1], op[2], op[3])
                            else:
                                vec = apply_split(vec, op[1], op[2], op[3])
                        col = {}
                        for key, coef in vec.terms.items():
                            labels = {final[c]: l for c, l in zip(vec.circles, key)}
                            _add(col, KZ.gen(w, labels), sign * coef)
                        if col:
                            table[(KX.offset[vx] + mx, KY.offset[vy] + my)] = col
        return table

    def apply(self, ix, iy):
        return self.table.get((ix, iy), {})

    def is_chain_map(self):
        """``d_Z g(x, y) = g(dx, y) + (-1)^{h(x)} g(x, dy)`` on all generator pairs."""
        KX, KY, KZ = self.X.K, self.Y.K, self.Z.K
        for ix in range(KX.dim):
            s = -1 if KX.grades[ix][0] % 2 else 1
            for iy in range(KY.dim):
                lhs = KZ.apply(self.apply(ix, iy))
                rhs = {}
                for jx, c in KX.d.get(ix, {}).items():
                    for k, e in self.apply(jx, iy).items():
                        _add(rhs, k, c * e)
                for jy, c in KY.d.get(iy, {}).items():
                    for k, e in self.apply(ix, jy).items():
                        _add(rhs, k, s * c * e)
                if lhs != rhs:
                    return False
        return True

    def preserves_grading(self):
        GX, GY, GZ = self.X.K.grades, self.Y.K.grades, self.Z.K.grades
        for (ix, iy), col in self.table.items():
            g = (GX[ix][0] + GY[iy][0], GX[ix][1] + GY[iy][1])
            if any(GZ[k] != g for k in col):
                return False
        return True


@lru_cache(maxsize=4096)
def gluing(X, i, Y, keep="outer"):
    return Gluing(X, i, Y, keep)


# ---------------------------------------------------------------------------
# arc algebras


class ArcAlgebra:
    """Khovanov's arc algebra ``C(n)`` with hom spaces ``C(n)(a, b) = V(a b-bar)``.

    ``hom(a, b)`` is the picture of the radial identity tangle with inner cap
    ``a`` and outer cap ``b``; composition ``hom(b, c) x hom(a, b) -> hom(a, c)``
    contracts the facing copies of ``b``.  Generators sit in homological
    degree 0 and quantum degree ``deg + n/2``.
    """

    def __init__(self, n):
        if n < 0 or n % 2:
            raise TangleError(f"arc algebras need an even number of points, got {n}")
        self.n = n
        self.objects = enumerate_matchings(n)
        self.tangle = identity_tangle(n)

    def hom(self, a, b):
        return picture(self.tangle, (a,), b)

    def dim(self, a, b):
        return self.hom(a, b).K.dim

    def total_rank(self):
        return sum(self.dim(a, b) for a in self.objects for b in self.objects)

    def compose(self, b, c, a):
        """The gluing ``hom(b, c) x hom(a, b) -> hom(a, c)``."""
        return gluing(self.hom(b, c), 0, self.hom(a, b))

    def mul(self, y, x, a, b, c):
        """``y o x`` for basis indices ``x`` in ``hom(a, b)`` and ``y`` in ``hom(b, c)``."""
        return self.compose(b, c, a).apply(y, x)

    def unit(self, a):
        """Index of ``1_a``: every circle labeled 1."""
        return 0

    def check_unit(self):
        for a in self.objects:
            for b in self.objects:
                H = self.hom(a, b).K
                for x in range(H.dim):
                    if self.mul(self.unit(b), x, a, b, b) != {x: 1}:
                        return False
                    if self.mul(x, self.unit(a), a, a, b) != {x: 1}:
                        return False
        return True

    def check_grading(self):
        for a in self.objects:
            if self.hom(a, a).K.grades[self.unit(a)] != (0, 0):
                return False
        return all(self.compose(b, c, a).preserves_grading()
                   for a in self.objects for b in self.objects for c in self.objects)

    def check_associative(self):
        """``(z y) x = z (y x)`` exhaustively over basis triples."""
        obs = self.objects
        for a in obs:
            for b in obs:
                for c in obs:
                    for d in obs:
                        if not self._assoc(a, b, c, d):
                            return False
        return True

    def _assoc(self, a, b, c, d):
        m_bcd = self.compose(c, d, b)
        m_abc = self.compose(b, c, a)
        m_acd = self.compose(c, d, a)
        m_abd = self.compose(b, d, a)
        for x in range(self.dim(a, b)):
            for y in range(self.dim(b, c)):
                yx = m_abc.apply(y, x)
                for z in range(self.dim(c, d)):
                    left, right = {}, {}
                    for k, e in yx.items():
                        for t, f in m_acd.apply(z, k).items():
                            _add(right, t, e * f)
                    for k, e in m_bcd.apply(z, y).items():
                        for t, f in m_abd.apply(k, x).items():
                            _add(left, t, e * f)
                    if left != right:
                        return False
        return True


@lru_cache(maxsize=16)
def arc_algebra(n):
    return ArcAlgebra(n)


# ---------------------------------------------------------------------------
# multi-modules


class TangleMultiModule:
    """The multi-module of a diskular tangle: one complex per tuple of caps.

    ``self[caps_inner, cap_outer]`` is the picture whose complex is
    ``C(T)(a_1, ..., a_k; b)``.  The algebra ``C(T.inner[i])`` acts by
    inserting its pictures into disk ``i`` and ``C(T.n)`` by inserting the
    module picture into an algebra picture.
    """

    def __init__(self, T):
        self.T = T
        self.algebras = [arc_algebra(m) for m in T.inner]
        self.outer = arc_algebra(T.n)

    def __getitem__(self, caps):
        inner, outer = caps
        return picture(self.T, tuple(inner), outer)

    def cap_tuples(self):
        """All ``(caps_inner, cap_outer)``."""
        out = [((), b) for b in enumerate_matchings(self.T.n)]
        for m in self.T.inner:
            out = [(inner + (a,), b) for inner, b in out for a in enumerate_matchings(m)]
        return out

    def inner_action(self, caps, i, a_new):
        """``x . alpha``: ``C(T)(.., c, ..; b) x C(m_i)(a_new, c) -> C(T)(.., a_new, ..; b)``."""
        inner, outer = caps
        X = self[caps]
        alg = self.algebras[i]
        return gluing(X, i, alg.hom(a_new, inner[i]), "outer")

    def outer_action(self, caps, b_new):
        """``beta . y``: ``C(n)(b, b_new) x C(T)(..; b) -> C(T)(..; b_new)``."""
        inner, outer = caps
        return gluing(self.outer.hom(outer, b_new), 0, self[caps], "inner")

    # -- property checks -----------------------------------------------------

    def check_d_squared(self):
        return all(self[c].K.check() for c in self.cap_tuples())

    def check_actions(self):
        """Actions are chain maps, associative, unital and mutually commuting."""
        for caps in self.cap_tuples():
            inner, outer = caps
            for i, alg in enumerate(self.algebras):
                for a in alg.objects:
                    g = self.inner_action(caps, i, a)
                    if g.Z is not self[(inner[:i] + (a,) + inner[i + 1:], outer)]:
                        raise ComplexError("inner action lands in the wrong picture")
                    if not g.is_chain_map():
                        return False
            for b in self.outer.objects:
                g = self.outer_action(caps, b)
                if g.Z is not self[(inner, b)]:
                    raise ComplexError("outer action lands in the wrong picture")
                if not g.is_chain_map():
                    return False
        return self._check_unital() and self._check_assoc() and self._check_commute()

    def _check_unital(self):
        for caps in self.cap_tuples():
            inner, outer = caps
            X = self[caps]
            for i, alg in enumerate(self.algebras):
                g = self.inner_action(caps, i, inner[i])
                if any(g.apply(x, alg.unit(inner[i])) != {x: 1} for x in range(X.K.dim)):
                    return False
            g = self.outer_action(caps, outer)
            if any(g.apply(self.outer.unit(outer), x) != {x: 1} for x in range(X.K.dim)):
                return False
        return True

    def _check_assoc(self):
        """``(x . alpha) . beta = x . (alpha beta)`` and the outer analogue."""
        for caps in self.cap_tuples():
            inner, outer = caps
            X = self[caps]
            for i, alg in enumerate(self.algebras):
                c = inner[i]
                for a in alg.objects:
                    g1 = self.inner_action(caps, i, a)
                    caps_a = (inner[:i] + (a,) + inner[i + 1:], outer)
                    for a2 in alg.objects:
                        g2 = self.inner_action(caps_a, i, a2)
                        g12 = self.inner_action(caps, i, a2)
                        m = alg.compose(a, c, a2)
                        for x in range(X.K.dim):
                            for al in range(alg.dim(a, c)):
                                xa = g1.apply(x, al)
                                for be in range(alg.dim(a2, a)):
                                    left, right = {}, {}
                                    for k, e in xa.items():
                                        for t, f in g2.apply(k, be).items():
                                            _add(left, t, e * f)
                                    for k, e in m.apply(al, be).items():
                                        for t, f in g12.apply(x, k).items():
                                            _add(right, t, e * f)
                                    if left != right:
                                        return False
            alg = self.outer
            for b in alg.objects:
                g1 = self.outer_action(caps, b)
                for b2 in alg.objects:
                    g2 = self.outer_action((inner, b), b2)
                    g12 = self.outer_action(caps, b2)
                    m = alg.compose(b, b2, outer)
                    for x in range(X.K.dim):
                        for be in range(alg.dim(outer, b)):
                            bx = g1.apply(be, x)
                            for ga in range(alg.dim(b, b2)):
                                left, right = {}, {}
                                for k, e in bx.items():
                                    for t, f in g2.apply(ga, k).items():
                                        _add(left, t, e * f)
                                for k, e in m.apply(ga, be).items():
                                    for t, f in g12.apply(k, x).items():
                                        _add(right, t, e * f)
                                if left != right:
                                    return False
        return True

    def _check_commute(self):
        """Actions on different boundary circles commute."""
        for caps in self.cap_tuples():
            inner, outer = caps
            X = self[caps]
            for i, alg in enumerate(self.algebras):
                for a in alg.objects:
                    caps_a = (inner[:i] + (a,) + inner[i + 1:], outer)
                    gi = self.inner_action(caps, i, a)
                    for b in self.outer.objects:
                        go = self.outer_action(caps, b)
                        gi2 = self.inner_action((inner, b), i, a)
                        go2 = self.outer_action(caps_a, b)
                        for x in range(X.K.dim):
                            for al in range(alg.dim(a, inner[i])):
                                for be in range(self.outer.dim(outer, b)):
                                    left, right = {}, {}
                                    for k, e in gi.apply(x, al).items():
                                        for t, f in go2.apply(be, k).items():
                                            _add(left, t, e * f)
                                    for k, e in go.apply(be, x).items():
                                        for t, f in gi2.apply(k, al).items():
                                            _add(right, t, e * f)
                                    if left != right:
                                        return False
        return True

    def check_projective(self):
        """Each resolution column ``C(T_v)(a; .)`` is ``V^j (x) C(n)(a', .)``.

        For a tangle with one inner disk (or none) and each vertex ``v`` and
        inner caps ``a``, the flat tangle ``T_v`` capped by ``a`` is a matching
        ``a'`` plus ``j`` circles; for every outer cap ``b`` the circles of
        ``a' b-bar`` plus ``j`` must be the circles of the full closure.
        """
        T = self.T
        inner_caps = [c for c, b in self.cap_tuples() if b == self.outer.objects[0]]
        for inner in inner_caps:
            for v in range(1 << T.N):
                ap, j = self._flat_matching(inner, v)
                for b in self.outer.objects:
                    circ = len(self[(inner, b)].K.circles[v])
                    if circ != j + len(self.outer.hom(ap, b).K.circles[0]):
                        return False
        return True

    def _flat_matching(self, inner, v):
        T = self.T
        pic = self[(inner, self.outer.objects[0])]
        pairs = pic.pairs(v, skip=(None,))
        atoms = {a for p in pairs for a in p} | set(T.boundary)
        comp = _components(atoms, pairs)
        pts = {}
        for p, e in enumerate(T.boundary, 1):
            pts.setdefault(comp[e], []).append(p)
        arcs = _norm(tuple(tuple(x) for x in pts.values()))
        ends = set(pts)
        j = len({cid for cid in comp.values() if cid not in ends})
        return arcs, j


# ---------------------------------------------------------------------------
# tensor products over the arc algebra and the gluing isomorphism


class GluingCheck:
    """``C(T)(..c..; b) (x)_{C(n_i)} C(S)(a; c) -> C(T o_i S)(..a..; b)``.

    Parameters
    ----------
    T, S : Tangle
        ``S`` is inserted into inner disk ``i`` of ``T``.
    other_caps : tuple
        Caps for the remaining inner disks of ``T`` (in order, skipping ``i``).
    caps_S : tuple
        Caps for the inner disks of ``S``.
    b : matching
        Outer cap.
    """

    def __init__(self, T, i, S, other_caps=(), caps_S=(), b=()):
        if S.n != T.inner[i]:
            raise TangleError(f"arity mismatch: disk {i} has {T.inner[i]} points, "
                              f"the inserted tangle has {S.n}")
        self.T, self.i, self.S = T, i, S
        self.alg = arc_algebra(S.n)
        other = tuple(other_caps)
        self.mT, self.mS = TangleMultiModule(T), TangleMultiModule(S)
        self.blocks = []  # (c, X, Y, gluing)
        for c in self.alg.objects:
            X = self.mT[(other[:i] + (c,) + other[i:], b)]
            Y = self.mS[(tuple(caps_S), c)]
            self.blocks.append((c, X, Y, gluing(X, i, Y, "outer")))
        Zs = {id(g.Z) for *_, g in self.blocks}
        if len(Zs) != 1:
            raise ComplexError("gluing targets differ between intermediate caps")
        self.Z = self.blocks[0][3].Z
        self.other, self.caps_S, self.b = other, tuple(caps_S), b

    def _free(self):
        """Generators ``(block, ix, iy)`` of the direct sum of tensor products."""
        gens, grades = [], []
        for k, (c, X, Y, g) in enumerate(self.blocks):
            for ix, gx in enumerate(X.K.grades):
                for iy, gy in enumerate(Y.K.grades):
                    gens.append((k, ix, iy))
                    grades.append((gx[0] + gy[0], gx[1] + gy[1]))
        return gens, grades

    def relations(self):
        """``(x . alpha) (x) y - x (x) (alpha . y)`` over all basis triples."""
        index = {g: n for n, g in enumerate(self._free()[0])}
        rels = []
        for k, (c, X, Y, _) in enumerate(self.blocks):
            for k2, (c2, X2, Y2, _) in enumerate(self.blocks):
                act_x = gluing(X, self.i, self.alg.hom(c2, c), "outer")
                act_y = gluing(self.alg.hom(c2, c), 0, Y2, "inner")
                assert act_x.Z is X2 and act_y.Z is Y
                for al in range(self.alg.dim(c2, c)):
                    for ix in range(X.K.dim):
                        xa = act_x.apply(ix, al)
                        for iy in range(Y2.K.dim):
                            r = {}
                            for jx, e in xa.items():
                                _add(r, index[(k2, jx, iy)], e)
                            for jy, e in act_y.apply(al, iy).items():
                                _add(r, index[(k, ix, jy)], -e)
                            if r:
                                rels.append(r)
        return rels

    def phi(self):
        gens = self._free()[0]
        return [self.blocks[k][3].apply(ix, iy) for k, ix, iy in gens]

    def check(self):
        """Verify that the gluing map descends to an isomorphism, block by block.

        Returns a dict with per-bidegree ranks; raises :class:`ComplexError`
        describing the first failure.
        """
        gens, grades = self._free()
        phi = self.phi()
        rels = self.relations()
        for _, X, Y, g in self.blocks:
            if not g.is_chain_map():
                raise ComplexError("gluing map does not commute with the differentials")
        KZ = self.Z.K
        for r in rels:
            img = {}
            for n, e in r.items():
                for t, f in phi[n].items():
                    _add(img, t, e * f)
            if img:
                raise ComplexError("gluing map does not vanish on the relations")
        by = {}
        for n, g in enumerate(grades):
            by.setdefault(g, []).append(n)
        rel_by = {}
        for r in rels:
            g = grades[next(iter(r))]
            rel_by.setdefault(g, []).append(r)
        report = {}
        for hq in sorted(set(by) | set(KZ.support())):
            F = by.get(hq, [])
            G = KZ.basis(*hq)
            pos = {n: k for k, n in enumerate(F)}
            gpos = {t: k for k, t in enumerate(G)}
            R = rel_by.get(hq, [])
            Rm = [[0] * len(R) for _ in F]
            for k, r in enumerate(R):
                for n, e in r.items():
                    Rm[pos[n]][k] = e
            D = linalg.smith(Rm, len(F), len(R))[0] if F and R else []
            rk = sum(1 for d in D if d)
            if any(abs(d) != 1 for d in D if d):
                raise ComplexError(f"relations are not saturated at {hq}")
            if rk != len(F) - len(G):
                raise ComplexError(f"rank mismatch at {hq}: {len(F)} - {rk} != {len(G)}")
            Pm = [[0] * len(F) for _ in G]
            for k, n in enumerate(F):
                for t, e in phi[n].items():
                    Pm[gpos[t]][k] = e
            if G:
                D = linalg.smith(Pm, len(G), len(F))[0]
                if sorted(abs(d) for d in D) != [1] * len(G):
                    raise ComplexError(f"gluing map is not onto at {hq}")
            report[hq] = (len(F), rk, len(G))
        return report

    def tensor_complex(self):
        """The quotient complex ``F / R`` as a :class:`GradedComplex`."""
        gens, grades = self._free()
        rels = self.relations()
        dF = {}
        for n, (k, ix, iy) in enumerate(gens):
            _, X, Y, _ = self.blocks[k]
            s = -1 if X.K.grades[ix][0] % 2 else 1
            col = {}
            base = n - ix * Y.K.dim - iy
            for jx, c in X.K.d.get(ix, {}).items():
                _add(col, base + jx * Y.K.dim + iy, c)
            for jy, c in Y.K.d.get(iy, {}).items():
                _add(col, base + ix * Y.K.dim + jy, s * c)
            if col:
                dF[n] = col
        by = {}
        for n, g in enumerate(grades):
            by.setdefault(g, []).append(n)
        rel_by = {}
        for r in rels:
            rel_by.setdefault(grades[next(iter(r))], []).append(r)
        quot = {}
        keys, qgrades = [], []
        for hq, F in sorted(by.items()):
            pos = {n: k for k, n in enumerate(F)}
            R = [[0] * len(F) for _ in rel_by.get(hq, [])]
            for row, r in zip(R, rel_by.get(hq, [])):
                for n, e in r.items():
                    row[pos[n]] = e
            proj, lift, factors = linalg.quotient(R, len(F))
            if any(f != 1 for f in factors):
                raise ComplexError(f"tensor quotient has torsion at {hq}")
            start = len(keys)
            for k in range(len(proj)):
                keys.append((hq, k))
                qgrades.append(hq)
            quot[hq] = (F, pos, proj, lift, start)
        d = {}
        for hq, (F, pos, proj, lift, start) in quot.items():
            tgt = (hq[0] - 1, hq[1])
            if tgt not in quot:
                continue
            F2, pos2, proj2, _, start2 = quot[tgt]
            for k in range(len(proj)):
                vec = {}
                for m, n in enumerate(F):
                    e = lift[m][k]
                    if e:
                        for t, c in dF.get(n, {}).items():
                            _add(vec, pos2[t], e * c)
                col = {}
                for r, row in enumerate(proj2):
                    s = sum(row[m] * c for m, c in vec.items())
                    if s:
                        col[start2 + r] = s
                if col:
                    d[start + k] = col
        return GradedComplex(keys, qgrades, d)


def tensor_over_algebra(T, i, S, other_caps=(), caps_S=(), b=()):
    """Quotient complex ``C(T) (x)_{C(n)} C(S)`` at fixed outer caps."""
    return GluingCheck(T, i, S, other_caps, caps_S, b).tensor_complex()
