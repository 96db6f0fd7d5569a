"""Bigraded chain complexes of free abelian groups over the integers.

A :class:`GradedComplex` has a list of generator keys, a bigrading ``(h, q)``
per generator and a sparse differential stored column-wise as
``{j: {i: coef}}`` over generator indices.  The differential has bidegree
``(-1, 0)``.
"""

from __future__ import annotations

import json
from collections import defaultdict

from . import linalg
from .kernels import diagonalize, eliminate_units


class ComplexError(ValueError):
    """Integrity failure: d^2 != 0, wrong bidegree or shape mismatch."""


def _add(vec, k, c):
    v = vec.get(k, 0) + c
    if v:
        vec[k] = v
    else:
        vec.pop(k, None)


def _axpy(dst, src, f):
    """dst += f * src for sparse dict vectors."""
    if f:
        for k, c in src.items():
            _add(dst, k, f * c)


class GradedComplex:
    """Finitely generated free bigraded complex.

    Parameters
    ----------
    keys : list
        Generator labels, distinct and hashable.
    grades : list of (int, int)
        ``(h, q)`` of every generator.
    d : dict
        Column-wise differential ``{j: {i: coef}}`` on indices.
    """

    def __init__(self, keys, grades, d=None):
        self.keys = list(keys)
        self.grades = [tuple(g) for g in grades]
        if len(self.grades) != len(self.keys):
            raise ComplexError("one grade per generator is required")
        self.d = {j: dict(c) for j, c in (d or {}).items() if c}
        self.index = {k: i for i, k in enumerate(self.keys)}
        if len(self.index) != len(self.keys):
            raise ComplexError("generator keys must be distinct")

    @property
    def dim(self):
        return len(self.keys)

    def __repr__(self):
        return f"GradedComplex(dim={self.dim}, support={sorted(self.support())})"

    def support(self):
        return set(self.grades)

    def basis(self, h, q):
        return [i for i, g in enumerate(self.grades) if g == (h, q)]

    def apply(self, vec):
        """Differential of a sparse vector ``{index: coef}``."""
        out = {}
        for j, c in vec.items():
            _axpy(out, self.d.get(j, {}), c)
        return out

    def check(self):
        """Raise :class:`ComplexError` unless d has bidegree (-1, 0) and d^2 = 0."""
        for j, col in self.d.items():
            h, q = self.grades[j]
            for i in col:
                if self.grades[i] != (h - 1, q):
                    raise ComplexError(f"differential {self.keys[j]} -> {self.keys[i]} "
                                       f"has bidegree {self.grades[i][0] - h, self.grades[i][1] - q}")
            if self.apply(col):
                raise ComplexError(f"d^2 != 0 on generator {self.keys[j]!r}")
        return True

    def shift(self, dh=0, dq=0):
        """The same complex with every generator moved by ``(dh, dq)``."""
        return GradedComplex(self.keys, [(h + dh, q + dq) for h, q in self.grades], self.d)

    def relabel(self, f):
        return GradedComplex([f(k) for k in self.keys], self.grades, self.d)

    def euler(self):
        """Graded Euler characteristic ``{q: sum (-1)^h rank}`` of the chain groups."""
        out = defaultdict(int)
        for h, q in self.grades:
            out[q] += -1 if h % 2 else 1
        return {q: c for q, c in sorted(out.items()) if c}


def zero_complex():
    return GradedComplex([], [], {})


def unit_complex(h=0, q=0, key=()):
    return GradedComplex([key], [(h, q)], {})


# ---------------------------------------------------------------------------
# homology


class HomologyTable:
    """Bigraded homology ``{(h, q): (free rank, sorted prime-power torsion)}``."""

    def __init__(self, groups=None):
        self.groups = {}
        for k, (free, tors) in (groups or {}).items():
            tors = tuple(sorted(tors))
            if free or tors:
                self.groups[tuple(k)] = (free, tors)

    def __eq__(self, other):
        return isinstance(other, HomologyTable) and self.groups == other.groups

    def __getitem__(self, hq):
        return self.groups.get(tuple(hq), (0, ()))

    def __repr__(self):
        return f"HomologyTable({self.to_json()})"

    def shift(self, dh=0, dq=0):
        return HomologyTable({(h + dh, q + dq): v for (h, q), v in self.groups.items()})

    def euler(self):
        """Graded Euler characteristic of the free part, ``{q: coefficient}``."""
        out = defaultdict(int)
        for (h, q), (free, _) in self.groups.items():
            out[q] += -free if h % 2 else free
        return {q: c for q, c in sorted(out.items()) if c}

    def total_rank(self):
        return sum(f for f, _ in self.groups.values())

    def to_json(self):
        rows = []
        for (h, q), (f, t) in sorted(self.groups.items()):
            row = {"h": h, "q": q, "free": f}
            if t:
                row["torsion"] = list(t)
            rows.append(row)
        return rows

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, rows):
        return cls({(r["h"], r["q"]): (r.get("free", 0), r.get("torsion", [])) for r in rows})


def prime_power_parts(n):
    """Prime-power factors of ``n``; e.g. 12 -> [3, 4]."""
    from sympy import factorint

    return sorted(p ** e for p, e in factorint(abs(n)).items())


def _blocks(C, cols, gens):
    """Split a differential restricted to ``gens`` into (h, q) blocks."""
    blocks = defaultdict(dict)
    for j in gens:
        col = cols.get(j)
        if col:
            blocks[C.grades[j]][j] = col
    return blocks


def homology(C, check=False):
    """Integral homology of ``C`` via unit elimination and diagonalization.

    Parameters
    ----------
    C : GradedComplex
    check : bool
        Verify d^2 = 0 and the bidegree first.

    Returns
    -------
    HomologyTable
    """
    if check:
        C.check()
    cols, removed = eliminate_units(C.d)
    gens = [i for i in range(C.dim) if i not in removed]
    count = defaultdict(int)
    for i in gens:
        count[C.grades[i]] += 1
    free = dict(count)
    tors = defaultdict(list)
    for (h, q), block in _blocks(C, cols, gens).items():
        diag = diagonalize(block)
        free[(h, q)] -= len(diag)
        free[(h - 1, q)] = free.get((h - 1, q), 0) - len(diag)
        for a in diag:
            if a > 1:
                tors[(h - 1, q)].extend(prime_power_parts(a))
    groups = {k: (free.get(k, 0), tors.get(k, ())) for k in set(free) | set(tors)}
    for k, (f, _) in groups.items():
        if f < 0:
            raise ComplexError("negative rank: the input is not a chain complex")
    return HomologyTable(groups)


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """A map of bidegree ``(dh, dq)`` stored as ``{source index: {target index: coef}}``."""

    def __init__(self, source, target, m=None, bidegree=(0, 0)):
        self.source, self.target = source, target
        self.m = {j: dict(c) for j, c in (m or {}).items() if c}
        self.bidegree = tuple(bidegree)

    def __repr__(self):
        nnz = sum(len(c) for c in self.m.values())
        return f"ChainMap({self.source.dim}->{self.target.dim}, bidegree={self.bidegree}, nnz={nnz})"

    def apply(self, vec):
        out = {}
        for j, c in vec.items():
            _axpy(out, self.m.get(j, {}), c)
        return out

    def is_zero(self):
        return not self.m

    def check(self):
        """Raise unless the map respects the bidegree and commutes with d."""
        dh, dq = self.bidegree
        for j, col in self.m.items():
            h, q = self.source.grades[j]
            for i in col:
                if self.target.grades[i] != (h + dh, q + dq):
                    raise ComplexError(f"map entry {self.source.keys[j]!r} -> "
                                       f"{self.target.keys[i]!r} breaks the bidegree")
        for j in range(self.source.dim):
            lhs = self.target.apply(self.m.get(j, {}))
            rhs = self.apply(self.source.d.get(j, {}))
            if lhs != rhs:
                raise ComplexError(f"map does not commute with d at {self.source.keys[j]!r}")
        return True

    def is_chain_map(self):
        try:
            return self.check()
        except ComplexError:
            return False

    def compose(self, other):
        """``self o other``."""
        if other.target is not self.source and other.target.keys != self.source.keys:
            raise ComplexError("maps are not composable")
        out = {}
        for j, col in other.m.items():
            v = self.apply(col)
            if v:
                out[j] = v
        bd = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
        return ChainMap(other.source, self.target, out, bd)

    def __matmul__(self, other):
        return self.compose(other)

    def scaled(self, s):
        return ChainMap(self.source, self.target,
                        {j: {i: s * c for i, c in col.items()} for j, col in self.m.items()},
                        self.bidegree)

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other):
        if self.bidegree != other.bidegree and not (self.is_zero() or other.is_zero()):
            raise ComplexError("cannot add maps of different bidegrees")
        out = {j: dict(c) for j, c in self.m.items()}
        for j, col in other.m.items():
            _axpy(out.setdefault(j, {}), col, 1)
        bd = self.bidegree if not self.is_zero() else other.bidegree
        return ChainMap(self.source, self.target, out, bd)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return {j: c for j, c in self.m.items() if c} == {j: c for j, c in other.m.items() if c}

    def dense(self):
        """Dense matrix rows = target, columns = source."""
        A = linalg.zeros(self.target.dim, self.source.dim)
        for j, col in self.m.items():
            for i, c in col.items():
                A[i][j] = c
        return A

    def with_source_shift(self, dh=0, dq=0):
        """Regard the map as starting at ``source`` shifted by ``(dh, dq)``."""
        return ChainMap(self.source.shift(dh, dq), self.target, self.m,
                        (self.bidegree[0] - dh, self.bidegree[1] - dq))

    def induced(self, hs=None):
        """Induced map on free homology, per source bigrading.

        Returns ``{(h, q): matrix}`` in bases of the free parts computed by
        :func:`homology_basis`.
        """
        src, tgt = homology_basis(self.source), homology_basis(self.target)
        dh, dq = self.bidegree
        out = {}
        for hq, (cyc, _) in src.items():
            if hs is not None and hq not in hs:
                continue
            thq = (hq[0] + dh, hq[1] + dq)
            if thq not in tgt:
                out[hq] = [[] for _ in cyc]
                continue
            _, coords = tgt[thq]
            out[hq] = [coords(self.apply(z)) for z in cyc]
        return out


def identity_map(C):
    return ChainMap(C, C, {j: {j: 1} for j in range(C.dim)})


def zero_map(S, T, bidegree=(0, 0)):
    return ChainMap(S, T, {}, bidegree)


def homology_basis(C):
    """Cycles spanning the free part of homology, with a coordinate function.

    Returns ``{(h, q): (cycles, coords)}`` where ``cycles`` is a list of sparse
    vectors and ``coords(z)`` gives the free-part coordinates of a cycle ``z``
    (torsion and boundaries are discarded).
    """
    out = {}
    for (h, q) in sorted(C.support()):
        here = C.basis(h, q)
        below = C.basis(h - 1, q)
        above = C.basis(h + 1, q)
        pos = {i: r for r, i in enumerate(here)}
        posb = {i: r for r, i in enumerate(below)}
        Dout = linalg.zeros(len(below), len(here))
        for c, j in enumerate(here):
            for i, v in C.d.get(j, {}).items():
                Dout[posb[i]][c] = v
        K, _ = linalg.kernel(Dout, len(here))
        if not K or not K[0]:
            continue
        k = len(K[0])
        # boundaries in kernel coordinates
        R = []
        for j in above:
            b = [0] * len(here)
            for i, v in C.d.get(j, {}).items():
                b[pos[i]] = v
            x = linalg.solve(K, b, k)
            R.append(x)
        proj, lift, _ = linalg.quotient(R, k)
        if not proj:
            continue
        cycles = []
        for c in range(len(proj)):
            vec = [sum(K[r][t] * lift[t][c] for t in range(k)) for r in range(len(here))]
            cycles.append({here[r]: x for r, x in enumerate(vec) if x})

        def coords(z, K=K, proj=proj, here=here, k=k):
            b = [z.get(i, 0) for i in here]
            x = linalg.solve(K, b, k)
            if x is None:
                raise ComplexError("vector is not a cycle")
            return linalg.matvec(proj, x)

        out[(h, q)] = (cycles, coords)
    return out


# ---------------------------------------------------------------------------
# constructions


def direct_sum(*Cs, tags=None):
    tags = tags or list(range(len(Cs)))
    keys, grades, d, off = [], [], {}, 0
    for t, C in zip(tags, Cs):
        keys += [(t, k) for k in C.keys]
        grades += C.grades
        for j, col in C.d.items():
            d[j + off] = {i + off: c for i, c in col.items()}
        off += C.dim
    return GradedComplex(keys, grades, d)


def cone(f):
    """Mapping cone of a bidegree-(0, 0) chain map ``f: A -> B``.

    Generators are ``("s", a)`` in grading ``(h + 1, q)`` and ``("t", b)``;
    the differential is ``(a, b) -> (-d a, f a + d b)``.
    """
    if tuple(f.bidegree) != (0, 0):
        raise ComplexError(f"cone needs a bidegree (0, 0) map, got {f.bidegree}")
    A, B = f.source, f.target
    n = A.dim
    keys = [("s", k) for k in A.keys] + [("t", k) for k in B.keys]
    grades = [(h + 1, q) for h, q in A.grades] + list(B.grades)
    d = {}
    for j in range(n):
        col = {i: -c for i, c in A.d.get(j, {}).items()}
        for i, c in f.m.get(j, {}).items():
            col[n + i] = c
        d[j] = col
    for j, col in B.d.items():
        d[n + j] = {n + i: c for i, c in col.items()}
    return GradedComplex(keys, grades, d)


def tensor(C, D):
    """Tensor product with the Koszul sign ``d(x y) = dx y + (-1)^h(x) x dy``."""
    keys, grades = [], []
    for a, ga in zip(C.keys, C.grades):
        for b, gb in zip(D.keys, D.grades):
            keys.append((a, b))
            grades.append((ga[0] + gb[0], ga[1] + gb[1]))
    m = D.dim
    d = {}
    for i in range(C.dim):
        s = -1 if C.grades[i][0] % 2 else 1
        for j in range(D.dim):
            col = {}
            for i2, c in C.d.get(i, {}).items():
                col[i2 * m + j] = c
            for j2, c in D.d.get(j, {}).items():
                _add(col, i * m + j2, s * c)
            if col:
                d[i * m + j] = col
    return GradedComplex(keys, grades, d)


def hom_complex(C, D):
    """The complex Hom(C, D) with ``(df) = d_D f - (-1)^{|f|} f d_C``.

    A generator ``(i, k)`` is the elementary map sending source generator
    ``i`` to target generator ``k``; its bigrading is ``grade(k) - grade(i)``.
    """
    keys, grades = [], []
    for i, gi in enumerate(C.grades):
        for k, gk in enumerate(D.grades):
            keys.append((C.keys[i], D.keys[k]))
            grades.append((gk[0] - gi[0], gk[1] - gi[1]))
    m = D.dim
    rowsC = defaultdict(dict)
    for j, col in C.d.items():
        for i, c in col.items():
            rowsC[i][j] = c
    d = {}
    for i in range(C.dim):
        for k in range(D.dim):
            deg = D.grades[k][0] - C.grades[i][0]
            s = -1 if deg % 2 else 1
            col = {}
            for k2, c in D.d.get(k, {}).items():
                _add(col, i * m + k2, c)
            # (f d_C)(j) = f(d j): f_{i,k} d_C gives j -> k for each j with d j having i
            for j, c in rowsC.get(i, {}).items():
                _add(col, j * m + k, -s * c)
            if col:
                d[i * m + k] = col
    return GradedComplex(keys, grades, d)


def map_as_hom_element(f, H):
    """Coordinates of a chain map in the generators of ``hom_complex(source, target)``."""
    m = f.target.dim
    return {j * m + i: c for j, col in f.m.items() for i, c in col.items()}


# ---------------------------------------------------------------------------
# Gaussian elimination with tracked homotopy equivalences


class _Elim:
    """Mutable sparse state for tracked elimination."""

    def __init__(self, C):
        self.C = C
        self.cols = {j: dict(c) for j, c in C.d.items()}
        self.rows = defaultdict(dict)
        for j, col in self.cols.items():
            for i, c in col.items():
                self.rows[i][j] = c
        self.alive = set(range(C.dim))
        self.F = {}   # current gen -> {orig: c}; default identity
        self.Gt = {}  # current gen -> {orig: c}; coefficients of G(orig) on gen

    def eliminate(self, a, b):
        cols, rows = self.cols, self.rows
        u = cols.get(a, {}).get(b, 0)
        if u not in (1, -1):
            raise ComplexError(f"entry d[{b}][{a}] = {u} is not a unit")
        gamma = [(r, c) for r, c in cols[a].items() if r != b]
        delta = [(k, c) for k, c in rows[b].items() if k != a]
        Fa = self.F.get(a, {a: 1})
        for k, dk in delta:
            Fk = self.F.setdefault(k, {k: 1})
            _axpy(Fk, Fa, -u * dk)
        Gb = self.Gt.get(b, {b: 1})
        for r, gr in gamma:
            Gr = self.Gt.setdefault(r, {r: 1})
            _axpy(Gr, Gb, -u * gr)
        for gen in (a, b):
            for r in cols.pop(gen, {}):
                rows[r].pop(gen, None)
            for k in rows.pop(gen, {}):
                if k in cols:
                    cols[k].pop(gen, None)
            self.F.pop(gen, None)
            self.Gt.pop(gen, None)
            self.alive.discard(gen)
        for k, dk in delta:
            ck = cols.setdefault(k, {})
            for r, gr in gamma:
                v = ck.get(r, 0) - gr * u * dk
                if v:
                    ck[r] = v
                    rows[r][k] = v
                else:
                    ck.pop(r, None)
                    rows[r].pop(k, None)

    def auto(self, allowed=None):
        progress = True
        while progress:
            progress = False
            for a in sorted(self.cols):
                col = self.cols.get(a)
                if not col:
                    continue
                best = None
                for b, c in col.items():
                    if c in (1, -1) and (allowed is None or allowed(a, b)):
                        w = len(self.rows[b])
                        if best is None or w < best[0]:
                            best = (w, b)
                if best is not None:
                    self.eliminate(a, best[1])
                    progress = True

    def result(self):
        C = self.C
        surv = sorted(self.alive)
        pos = {g: t for t, g in enumerate(surv)}
        red = GradedComplex([C.keys[g] for g in surv], [C.grades[g] for g in surv],
                            {pos[j]: {pos[i]: c for i, c in self.cols.get(j, {}).items()}
                             for j in surv if self.cols.get(j)})
        F = ChainMap(red, C, {pos[g]: dict(self.F.get(g, {g: 1})) for g in surv})
        G = {}
        for g in surv:
            for x, c in self.Gt.get(g, {g: 1}).items():
                G.setdefault(x, {})[pos[g]] = c
        G = ChainMap(C, red, G)
        return red, F, G


def eliminate(C, pairs=None, allowed=None):
    """Gaussian elimination of unit differential entries with tracking.

    Parameters
    ----------
    C : GradedComplex
    pairs : list of (a, b), optional
        Explicit generator index pairs with ``d[b][a] = +-1``, eliminated in
        order.  When omitted, unit entries are eliminated greedily.
    allowed : callable, optional
        Filter ``(a, b) -> bool`` for the greedy mode.

    Returns
    -------
    (Cred, F, G)
        The reduced complex, the inclusion ``F: Cred -> C`` and the projection
        ``G: C -> Cred``; ``G F = id`` and ``F G`` is homotopic to the identity.
    """
    st = _Elim(C)
    if pairs is not None:
        for a, b in pairs:
            st.eliminate(a, b)
    else:
        st.auto(allowed)
    return st.result()


# ---------------------------------------------------------------------------
# homotopy decisions


_reduced_cache = {}


def _reduced(C):
    key = id(C)
    hit = _reduced_cache.get(key)
    if hit is not None and hit[0] is C:
        return hit[1]
    r = eliminate(C)
    if len(_reduced_cache) > 64:
        _reduced_cache.clear()
    _reduced_cache[key] = (C, r)
    return r


def reduce_map(f):
    """Transport ``f`` to the reduced complexes of its source and target."""
    Sr, FS, _ = _reduced(f.source)
    Tr, _, GT = _reduced(f.target)
    m = {}
    for j in range(Sr.dim):
        v = GT.apply(f.apply(FS.m.get(j, {})))
        if v:
            m[j] = v
    return ChainMap(Sr, Tr, m, f.bidegree)


def homotopy(f):
    """Solve ``d H + H d = f`` over Z.

    Returns the homotopy as a dict ``{(j, i): coef}`` on the reduced complexes
    or ``None`` when ``f`` is not nullhomotopic.
    """
    g = reduce_map(f)
    S, T = g.source, g.target
    dh, dq = f.bidegree
    rowsS = defaultdict(dict)
    for j, col in S.d.items():
        for i, c in col.items():
            rowsS[i][j] = c
    by_grade = defaultdict(list)
    for k, gr in enumerate(T.grades):
        by_grade[gr].append(k)
    solution = {}
    for q in sorted({gr[1] for gr in S.grades}):
        src = [j for j, gr in enumerate(S.grades) if gr[1] == q]
        unk, eqs = {}, {}
        for j in src:
            h = S.grades[j][0]
            for k in by_grade.get((h + dh + 1, q + dq), ()):
                unk[(j, k)] = len(unk)
            for k in by_grade.get((h + dh, q + dq), ()):
                eqs[(j, k)] = len(eqs)
        if not eqs:
            continue
        A = linalg.zeros(len(eqs), len(unk))
        for (j, k), u in unk.items():
            # (d_T H)(j) contributes H[j][k] * d_T(k)
            for k2, c in T.d.get(k, {}).items():
                A[eqs[(j, k2)]][u] += c
            # (H d_S)(j') for j' with d_S(j') containing j
            for j2, c in rowsS.get(j, {}).items():
                A[eqs[(j2, k)]][u] += c
        b = [0] * len(eqs)
        for (j, k), e in eqs.items():
            b[e] = g.m.get(j, {}).get(k, 0)
        if not any(b):
            continue
        if not unk:
            return None
        x = linalg.solve(A, b, len(unk))
        if x is None:
            return None
        for (j, k), u in unk.items():
            if x[u]:
                solution[(j, k)] = x[u]
    return solution


def is_nullhomotopic(f):
    if f.is_zero():
        return True
    return homotopy(f) is not None


def equal_up_to_sign_and_homotopy(f, g):
    """Decide whether ``[f] = +-[g]``.

    Returns ``+1`` or ``-1`` (the sign ``s`` with ``f ~ s g``) or ``0`` when
    the maps are not homotopic up to sign.  If both maps are nullhomotopic the
    answer is ``+1``.
    """
    if f.bidegree != g.bidegree and not (f.is_zero() or g.is_zero()):
        nf, ng = is_nullhomotopic(f), is_nullhomotopic(g)
        return 1 if nf and ng else 0
    if is_nullhomotopic(f - g):
        return 1
    if is_nullhomotopic(f + g):
        return -1
    return 0
