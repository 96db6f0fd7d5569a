"""Chain maps induced by elementary cobordisms and movies.

A movie on an ``n``-ended tangle is evaluated on every closure ``b-bar T``
with ``b`` a crossingless matching; the result is a :class:`MovieMap`, one
chain map per capping matching.  Because every elementary map is defined
locally, these maps are natural in ``b`` and commute with the arc-algebra
actions (checked in the test suite).

Reidemeister maps are built by Gaussian elimination of the local
isomorphism components (delooping of the small circle of the move) on the
complex of the diagram with more crossings.  The surviving generators are
matched with the generators of the other diagram through shared edge ids,
and the signs of the identification are solved vertex by vertex and then
verified on the whole differential.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .homology import ChainMap, ComplexError, eliminate, identity_map
from .khovanov import KhComplex, carried, popcount, rename, vertex_map
from .moves import MovieError, _bigon
from .tangles import _UF, closure, enumerate_matchings
from .tqft import apply_birth, apply_death, apply_dot, apply_merge, apply_split

_NEW, _NEW2 = "__new_a", "__new_b"


@lru_cache(maxsize=512)
def closed_complex(T, cap):
    """Khovanov complex of the closure of the (;n)-tangle ``T`` by ``cap``."""
    return KhComplex(closure(T, (), cap), T.P, T.n // 2)


# ---------------------------------------------------------------------------
# Morse and dot maps


def saddle_map(A, B, src, tgt, bidegree=(0, 1)):
    e, f = src
    ge, gf = tgt

    def fn(v, w, vec):
        ce, cf = A.circle_of(v, e), A.circle_of(v, f)
        ren = carried(A, B, v, w, {ce, cf})
        if ce != cf:
            out = apply_merge(vec, ce, cf, _NEW)
            ren[_NEW] = B.circle_of(w, ge)
        else:
            out = apply_split(vec, ce, _NEW, _NEW2)
            ren[_NEW] = B.circle_of(w, ge)
            ren[_NEW2] = B.circle_of(w, gf)
            if ren[_NEW] == ren[_NEW2]:
                raise ComplexError("saddle does not split the circle")
        return rename(out, ren)

    return vertex_map(A, B, fn, bidegree=bidegree)


def birth_map(A, B, c):
    def fn(v, w, vec):
        ren = carried(A, B, v, w)
        out = apply_birth(vec, _NEW)
        ren[_NEW] = B.circle_of(w, c)
        return rename(out, ren)

    return vertex_map(A, B, fn, bidegree=(0, -1))


def death_map(A, B, c):
    def fn(v, w, vec):
        cc = A.circle_of(v, c)
        ren = carried(A, B, v, w, {cc})
        return rename(apply_death(vec, cc), ren)

    return vertex_map(A, B, fn, bidegree=(0, -1))


def dot_map(A, B, e):
    def fn(v, w, vec):
        ren = carried(A, B, v, w)
        return rename(apply_dot(vec, A.circle_of(v, e)), ren)

    return vertex_map(A, B, fn, bidegree=(0, 2))


def _cube_sign(v, j):
    return -1 if popcount(v & ((1 << j) - 1)) % 2 else 1


def isotopy_map(A, B, ren, order):
    """Relabeling map; ``order[k]`` is the source index of target crossing ``k``."""
    N = A.N
    inv = {old: new for new, old in enumerate(order)}

    def vmap(v):
        w = 0
        for j in range(N):
            if (v >> j) & 1:
                w |= 1 << inv[j]
        return w

    eps = {0: 1}
    for v in sorted(range(1 << N), key=popcount):
        for j in range(N):
            if not (v >> j) & 1:
                u = v | (1 << j)
                if u not in eps:
                    eps[u] = eps[v] * _cube_sign(v, j) * _cube_sign(vmap(v), inv[j])

    def fn(v, w, vec):
        m = {c: B.circle_of(w, ren.get(c, c)) for c in A.circles[v]}
        return rename(vec, m)

    return vertex_map(A, B, fn, vmap=vmap, sign=lambda v: eps[v])


# ---------------------------------------------------------------------------
# Reidemeister maps by local elimination


def _local_components(crossings, bits, atom, internal=None):
    """Atoms of the component of ``atom`` in the local resolution of ``crossings``.

    Two crossing slots carrying the same atom are joined only when the atom
    is in ``internal`` (all atoms by default).  This keeps a kink that leaves
    the local disk from closing up a local arc.
    """
    ports = [(k, s) for k in range(len(crossings)) for s in range(4)]
    uf = _UF(ports)
    for k, (c, b) in enumerate(zip(crossings, bits)):
        if b:
            uf.union((k, 0), (k, 3)); uf.union((k, 1), (k, 2))
        else:
            uf.union((k, 0), (k, 1)); uf.union((k, 2), (k, 3))
    occ = {}
    for k, c in enumerate(crossings):
        for s, x in enumerate(c):
            occ.setdefault(x, []).append((k, s))
    for x, ps in occ.items():
        if internal is None or x in internal:
            for p in ps[1:]:
                uf.union(ps[0], p)
    r = uf.find(occ[atom][0])
    return {crossings[k][s] for k, s in ports if uf.find((k, s)) == r}


def _term_at(K, col, w, pred=None):
    """The unique entry of a column at vertex ``w`` satisfying ``pred``."""
    hits = []
    for i, c in col.items():
        if K.keys[i][0] == w and (pred is None or pred(i)):
            hits.append((i, c))
    if len(hits) != 1 or hits[0][1] not in (1, -1):
        raise ComplexError("local elimination found no unit entry")
    return hits[0][0]


def _label(K, i, atom):
    v, lab = K.labeling(i)
    return lab[K.circle_of(v, atom)]


def _r1_pairs(K, j, loop, circle_bit):
    pairs = []
    for v in range(1 << K.N):
        if (v >> j) & 1:
            continue
        w = v | (1 << j)
        for mask in range(1 << len(K.circles[v])):
            a = K.offset[v] + mask
            if circle_bit == 0:
                if _label(K, a, loop):
                    continue
                b = _term_at(K, K.d[a], w)
            else:
                b = _term_at(K, K.d[a], w, lambda i: _label(K, i, loop) == 1)
            pairs.append((a, b))
    return pairs


def _r2_pairs(K, u, w, s_atom, fixed=None):
    """Delooping pairs for a bigon between crossings ``u`` and ``w``.

    The circle state of the bigon is ``u = 0, w = 1``; ``s_atom`` lies on the
    bigon circle.  ``fixed`` restricts to vertices with given bits.
    """
    first, second = [], []
    for v in range(1 << K.N):
        if (v >> u) & 1 or (v >> w) & 1:
            continue
        if fixed and any(((v >> k) & 1) != b for k, b in fixed.items()):
            continue
        vw = v | (1 << w)
        for mask in range(1 << len(K.circles[v])):
            a = K.offset[v] + mask
            first.append((a, _term_at(K, K.d[a], vw, lambda i: _label(K, i, s_atom) == 1)))
        for mask in range(1 << len(K.circles[vw])):
            a = K.offset[vw] + mask
            if _label(K, a, s_atom):
                continue
            second.append((a, _term_at(K, K.d[a], vw | (1 << u))))
    return first + second


def _circle_state(crossings, pair_idx, s_atom, tri):
    """Which of the two mixed states of a bigon closes ``s_atom`` into a circle."""
    cu, cw = pair_idx
    sub = [crossings[cu], crossings[cw]]
    for bits in ((0, 1), (1, 0)):
        comp = _local_components(sub, bits, s_atom, tri)
        if comp <= tri:
            return (cu, cw) if bits == (0, 1) else (cw, cu)
    raise ComplexError("crossings do not bound a removable bigon")


def _match_signs(A, B, match, cls):
    """Solve ``eps`` with ``B.d[m(i)][m(j)] = eps(i) eps(j) A.d[i][j]`` and verify.

    Returns the isomorphism ``A -> B`` and its inverse.
    """
    if sorted(match.values()) != list(range(B.dim)) or len(match) != A.dim:
        raise ComplexError("survivors do not match the generators one to one")
    eps = {}
    adj = {}
    for j, col in A.d.items():
        for i, c in col.items():
            r = B.d.get(match[j], {}).get(match[i], 0)
            if r not in (c, -c):
                raise ComplexError("reduced differential differs from the target differential")
            s = 1 if r == c else -1
            adj.setdefault(cls(j), []).append((cls(i), s))
            adj.setdefault(cls(i), []).append((cls(j), s))
    for start in sorted({cls(i) for i in range(A.dim)}):
        if start in eps:
            continue
        eps[start] = 1
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, s in adj.get(x, ()):
                if y not in eps:
                    eps[y] = eps[x] * s
                    queue.append(y)
    iso = ChainMap(A, B, {i: {match[i]: eps[cls(i)]} for i in range(A.dim)})
    inv = ChainMap(B, A, {match[i]: {i: eps[cls(i)]} for i in range(A.dim)})
    iso.check()
    return iso, inv


def _small_match(small, red, big, keep):
    """Match reduced survivors with small-diagram generators via shared atoms.

    ``keep`` lists the big crossing indices that survive, in small order.
    """
    match = {}
    for r, key in enumerate(red.keys):
        v_big, mask = key
        lab_big = {c: (mask >> i) & 1 for i, c in enumerate(big.circles[v_big])}
        v = 0
        for k, jb in enumerate(keep):
            if (v_big >> jb) & 1:
                v |= 1 << k
        labels = {c: lab_big[big.circle_of(v_big, c)] for c in small.circles[v]}
        i = small.gen(v, labels)
        if i in match:
            raise ComplexError("two survivors match the same generator")
        match[i] = r
    return match


def _reduce_to_small(big, small, pairs, keep):
    red, F, G = eliminate(big, pairs)
    match = _small_match(small, red, big, keep)
    iso, inv = _match_signs(small, red, match, lambda i: small.keys[i][0])
    return F @ iso, inv @ G


def r1_maps(small, big, j, loop, circle_bit):
    """(small -> big, big -> small) homotopy equivalences for a kink at ``j``."""
    pairs = _r1_pairs(big, j, loop, circle_bit)
    keep = [k for k in range(big.N) if k != j]
    return _reduce_to_small(big, small, pairs, keep)


def r2_maps(small, big, ci, cj, bigon):
    cd = big.cd
    u, w = _circle_state(cd.crossings, (ci, cj), bigon[0], set(bigon))
    pairs = _r2_pairs(big, u, w, bigon[0])
    keep = [k for k in range(big.N) if k not in (ci, cj)]
    return _reduce_to_small(big, small, pairs, keep)


# -- R3 --------------------------------------------------------------------


def _r3_setup(cd, idx):
    xs = [cd.crossings[k] for k in idx]
    tri = set()
    for a in range(3):
        for b in range(a + 1, 3):
            tri |= set(xs[a]) & set(xs[b])
    # strand levels from slot parity along triangle edges
    par = {}
    for a, c in enumerate(xs):
        for s in range(4):
            par.setdefault(c[s], []).append((a, s % 2))
    uf = _UF([(a, p) for a in range(3) for p in (0, 1)])
    for x in tri:
        (a, p), (b, q) = par[x]
        uf.union((a, p), (b, q))
    levels = {}
    for a in range(3):
        for p in (0, 1):
            levels.setdefault(uf.find((a, p)), []).append(p)
    top = [r for r, ps in levels.items() if ps == [1, 1]][0]
    bot = [r for r, ps in levels.items() if ps == [0, 0]][0]
    # the top-middle crossing is the one where the bottom strand does not pass
    x = [a for a in range(3) if uf.find((a, 0)) != bot and uf.find((a, 1)) != bot][0]
    assert uf.find((x, 1)) == top
    c = xs[x]
    slots = {s for s in range(4) if c[s] in tri}
    bit = 0 if slots in ({0, 1}, {2, 3}) else 1
    others = [a for a in range(3) if a != x]
    t_uw = (set(xs[others[0]]) & set(xs[others[1]])).pop()
    return idx[x], bit, [idx[a] for a in others], t_uw, tri


def _r3_reduce(K, idx):
    x, bit, others, t_uw, tri = _r3_setup(K.cd, idx)
    u, w = _circle_state_r3(K.cd, x, bit, others, t_uw, tri)
    pairs = _r2_pairs(K, u, w, t_uw, fixed={x: bit})
    return eliminate(K, pairs), tri


def _circle_state_r3(cd, x, bit, others, t_uw, tri):
    sub = [cd.crossings[x], cd.crossings[others[0]], cd.crossings[others[1]]]
    for bits in ((0, 1), (1, 0)):
        comp = _local_components(sub, (bit,) + bits, t_uw, tri)
        if comp <= tri:
            return (others[0], others[1]) if bits == (0, 1) else (others[1], others[0])
    raise ComplexError("no bigon after resolving the top-middle crossing")


def _r3_key(K, i, tri, idx):
    """Survivor key: outside bits, grading, local matching with labels, far circles."""
    v, lab = K.labeling(i)
    outside = tuple((v >> k) & 1 for k in range(K.N) if k not in idx)
    xs = [K.cd.crossings[k] for k in idx]
    bits = [(v >> k) & 1 for k in idx]
    region = {x for c in xs for x in c}
    local, free, seen = [], [], set()
    for x in sorted(region, key=repr):
        if x in seen:
            continue
        comp = _local_components(xs, bits, x)
        seen |= comp
        label = lab[K.circle_of(v, x)]
        outer = frozenset(comp - tri)
        if outer:
            local.append((outer, label))
        else:
            free.append(label)
    touched = {K.circle_of(v, x) for x in region}
    far = frozenset((c, lab[c]) for c in K.circles[v] if c not in touched)
    return outside, K.grades[i], frozenset(local), tuple(sorted(free)), far


def r3_maps(A, B, idx):
    """(A -> B, B -> A) homotopy equivalences for a triangle move on crossings ``idx``."""
    (ra, FA, GA), tri = _r3_reduce(A, idx)
    (rb, FB, GB), _ = _r3_reduce(B, idx)
    kb = {}
    for r in range(rb.dim):
        key = _r3_key(B, B.index[rb.keys[r]], tri, idx)
        if key in kb:
            raise ComplexError("ambiguous survivor key in the triangle move")
        kb[key] = r
    match = {}
    for r in range(ra.dim):
        key = _r3_key(A, A.index[ra.keys[r]], tri, idx)
        if key not in kb:
            raise ComplexError("triangle move survivors do not correspond")
        match[r] = kb[key]
    iso, inv = _match_signs(ra, rb, match, lambda r: ra.keys[r][0])
    return FB @ iso @ GA, FA @ inv @ GB


# ---------------------------------------------------------------------------
# steps and movies


def step_map(kind, info, Ts, Tt, cap):
    """Chain map of one applied step on the closures by ``cap``."""
    A, B = closed_complex(Ts, cap), closed_complex(Tt, cap)
    if kind == "saddle":
        return saddle_map(A, B, info["src"], info["tgt"])
    if kind == "birth":
        return birth_map(A, B, info["new"])
    if kind == "death":
        return death_map(A, B, info["old"])
    if kind == "dot":
        return dot_map(A, B, info["edge"])
    if kind == "isotopy":
        return isotopy_map(A, B, info["rename"], info["order"])
    if kind == "r1_add":
        up, _ = r1_maps(A, B, info["crossing"], info["loop"], info["circle_bit"])
        return up
    if kind == "r1_remove":
        _, down = r1_maps(B, A, info["crossing"], info["loop"], info["circle_bit"])
        return down
    if kind == "r2_add":
        up, _ = r2_maps(A, B, *info["crossings"], Tt_bigon(Tt, info))
        return up
    if kind == "r2_remove":
        _, down = r2_maps(B, A, *info["crossings"], _bigon_atoms(Ts, info["crossings"]))
        return down
    if kind == "r3":
        fwd, _ = r3_maps(A, B, tuple(info["crossings"]))
        return fwd
    raise MovieError(f"unknown step {kind!r}")


def Tt_bigon(T, info):
    return tuple(info["bigon"])


def _bigon_atoms(T, ij):
    return tuple(_bigon(T, *ij))


class MovieMap:
    """One chain map per capping matching, plus the movie bookkeeping."""

    def __init__(self, maps, P, chi, qdeg, start, end):
        self.maps = maps
        self.P, self.chi = P, chi
        self.qdeg = qdeg
        self.start, self.end = start, end

    @property
    def caps(self):
        return list(self.maps)

    def __getitem__(self, cap):
        return self.maps[cap]

    def compose(self, other):
        """``self o other`` (other runs first)."""
        return MovieMap({b: self.maps[b] @ other.maps[b] for b in self.maps},
                        self.P + other.P, self.chi + other.chi, self.qdeg + other.qdeg,
                        other.start, self.end)

    def scaled(self, s):
        return MovieMap({b: f.scaled(s) for b, f in self.maps.items()},
                        self.P, self.chi, self.qdeg, self.start, self.end)

    def __add__(self, other):
        return MovieMap({b: self.maps[b] + other.maps[b] for b in self.maps},
                        self.P, self.chi, self.qdeg, self.start, self.end)


def movie_map(m, caps=None):
    """Evaluate a movie on the closures by ``caps`` (all matchings by default)."""
    frames = m.frames()
    n = m.start.n
    caps = enumerate_matchings(n) if caps is None else [tuple(map(tuple, b)) for b in caps]
    maps = {}
    for b in caps:
        f = identity_map(closed_complex(m.start, b))
        for st, (Ts, _), (Tt, info) in zip(m.steps, frames, frames[1:]):
            g = step_map(st.kind, info, Ts, Tt, b)
            f = g @ f
        maps[b] = f
    P, chi = m.bookkeeping()
    end = frames[-1][0]
    return MovieMap(maps, P, chi, m.qdegree(), m.start, end)


def elementary_map(step, T, cap=()):
    """The chain map of a single step applied to ``T`` on one closure."""
    T2, info = step.apply(T)
    return step_map(step.kind, info, T, T2, tuple(cap))


# ---------------------------------------------------------------------------
# neck cutting and closed surfaces


def neck_cut(m, k, c):
    """Surger the tube swept by circle ``c`` right after step ``k`` of ``m``.

    ``k = 0`` means the start frame.  Returns ``(m_plus, m_minus)`` with the
    dot on the lower and on the upper cap respectively.
    """
    from .moves import Movie, S

    T = m.frames()[k][0]
    if c not in T.loops:
        raise MovieError(f"{c!r} is not a crossingless circle at frame {k}")
    head, tail = list(m.steps[:k]), list(m.steps[k:])
    plus = [S("dot", edge=c), S("death", id=c), S("birth", id=c)]
    minus = [S("death", id=c), S("birth", id=c), S("dot", edge=c)]
    return Movie(m.start, head + plus + tail), Movie(m.start, head + minus + tail)


def closed_value(m):
    """Integer by which a movie from the empty diagram to itself acts on ``Z``."""
    if m.start.N or m.start.loops or m.start.n or m.start.inner:
        raise MovieError("closed surfaces start at the empty diagram")
    f = movie_map(m)[()]
    if f.source.dim != 1 or f.target.dim != 1:
        raise MovieError("closed surfaces end at the empty diagram")
    return f.m.get(0, {}).get(0, 0)
