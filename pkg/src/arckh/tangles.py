"""Diskular tangle diagrams in a planar-diagram (PD) encoding.

A crossing is a 4-tuple of edge ids listed counterclockwise, starting at
the incoming under-strand.  Its 0-resolution joins slots (0,1) and (2,3);
its 1-resolution joins (0,3) and (1,2).  Outer boundary point ``i`` (1-based,
counterclockwise) carries edge ``boundary[i-1]``; inner disk ``k`` lists its
points counterclockwise in ``inner_boundary[k]``.  Closed components without
crossings are listed in ``loops``.

Every non-loop edge has exactly two ends among crossing slots and boundary
points.  Edges are oriented from their first end to their second end in
scan order (crossings in order and slots 0..3, then outer points, then
inner points); the "left"/"right" sides used by movie steps refer to this
orientation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import lru_cache


class TangleError(ValueError):
    """Malformed, non-planar or mismatched tangle data."""


# ---------------------------------------------------------------------------
# crossingless matchings


def is_noncrossing(pairs):
    """True if no two chords (a,b), (c,d) interleave as a < c < b < d."""
    ps = [tuple(sorted(p)) for p in pairs]
    for (a, b), (c, d) in itertools.combinations(ps, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


@lru_cache(maxsize=None)
def _matchings(points):
    if not points:
        return ((),)
    first, out = points[0], []
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1:]
        for m1 in _matchings(inside):
            for m2 in _matchings(outside):
                out.append(tuple(sorted(((first, points[k]),) + m1 + m2)))
    return tuple(out)


def enumerate_matchings(n):
    """All crossingless matchings of points 1..n, in a fixed order.

    Each matching is a sorted tuple of pairs ``(p, q)`` with ``p < q``.
    """
    if n < 0 or n % 2:
        raise TangleError(f"need an even number of points, got {n}")
    return list(_matchings(tuple(range(1, n + 1))))


def mirror_matching(a, n):
    """Reflection of a matching: point i goes to n + 1 - i."""
    return tuple(sorted(tuple(sorted((n + 1 - p, n + 1 - q))) for p, q in a))


# ---------------------------------------------------------------------------
# tangles


@dataclass(frozen=True)
class Tangle:
    """A diskular (m_1,...,m_k; n)-tangle diagram together with the integer P."""

    n: int = 0
    inner: tuple = ()
    crossings: tuple = ()
    boundary: tuple = ()
    inner_boundary: tuple = ()
    P: int = 0
    loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "inner", tuple(self.inner))
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "inner_boundary", tuple(tuple(b) for b in self.inner_boundary))
        object.__setattr__(self, "loops", tuple(sorted(self.loops, key=_key)))

    @property
    def N(self):
        return len(self.crossings)

    def edges(self):
        es = set(self.loops)
        for c in self.crossings:
            es.update(c)
        es.update(self.boundary)
        for b in self.inner_boundary:
            es.update(b)
        return es

    def with_P(self, P):
        return replace(self, P=P)

    def is_closed(self):
        return self.n == 0 and not self.inner


def edge_ends(T):
    """Map edge -> list of its ports in scan order.

    A port is ``("x", crossing, slot)``, ``("o", i)`` (0-based outer point) or
    ``("i", disk, j)``.  Loops map to an empty list.
    """
    ends = {l: [] for l in T.loops}
    for ci, c in enumerate(T.crossings):
        for s, e in enumerate(c):
            ends.setdefault(e, []).append(("x", ci, s))
    for i, e in enumerate(T.boundary):
        ends.setdefault(e, []).append(("o", i))
    for k, b in enumerate(T.inner_boundary):
        for j, e in enumerate(b):
            ends.setdefault(e, []).append(("i", k, j))
    return ends


def validate(T, planar=True):
    """Check counts, degrees and (optionally) planarity; return ``T``."""
    if T.n % 2 or T.n < 0:
        raise TangleError(f"outer boundary count must be even, got {T.n}")
    if len(T.boundary) != T.n:
        raise TangleError("boundary_edges length differs from n")
    if len(T.inner_boundary) != len(T.inner):
        raise TangleError("inner_boundary_edges does not match inner")
    for m, b in zip(T.inner, T.inner_boundary):
        if m % 2 or len(b) != m:
            raise TangleError("inner disk point counts must be even and match")
    for c in T.crossings:
        if len(c) != 4:
            raise TangleError(f"crossing {c} does not have 4 slots")
    if len(set(T.loops)) != len(T.loops):
        raise TangleError("repeated loop id")
    for e, ports in edge_ends(T).items():
        if e in T.loops:
            if ports:
                raise TangleError(f"loop edge {e!r} also appears at a crossing or boundary point")
        elif len(ports) != 2:
            raise TangleError(f"edge {e!r} has {len(ports)} ends (expected 2)")
    if planar:
        check_planar(T)
    return T


def rotation_system(T):
    """Vertices with counterclockwise dart lists and the dart pairing by edges."""
    verts = {}
    for ci, c in enumerate(T.crossings):
        verts[("x", ci)] = [("x", ci, s) for s in range(4)]
    if T.n:
        # the outer circle seen as a vertex at infinity has reversed rotation
        verts[("o",)] = [("o", i) for i in reversed(range(T.n))]
    for k, m in enumerate(T.inner):
        if m:
            verts[("i", k)] = [("i", k, j) for j in range(m)]
    other = {}
    for e, ports in edge_ends(T).items():
        if len(ports) == 2:
            a, b = ports
            other[a], other[b] = b, a
    return verts, other


def _vertex_of(dart):
    return dart[:2] if dart[0] != "o" else ("o",)


def check_planar(T):
    """Euler-characteristic test of the combinatorial embedding.

    Every connected component of the diagram graph (crossings, the outer
    circle and the inner disks as vertices) must satisfy V - E + F = 2.
    """
    verts, other = rotation_system(T)
    nxt = {}
    for v, darts in verts.items():
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in other.items():
        parent[find(_vertex_of(a))] = find(_vertex_of(b))
    V, E, F = {}, {}, {}
    for v in verts:
        r = find(v)
        V[r] = V.get(r, 0) + 1
        E[r] = E.get(r, 0) + len(verts[v])
    seen = set()
    for d in nxt:
        if d in seen:
            continue
        r = find(_vertex_of(d))
        F[r] = F.get(r, 0) + 1
        x = d
        while x not in seen:
            seen.add(x)
            x = nxt[other[x]]
    for r in V:
        if V[r] - E[r] // 2 + F.get(r, 0) != 2:
            bad = sorted(str(e) for e, p in edge_ends(T).items()
                         if p and find(_vertex_of(p[0])) == r)
            raise TangleError(f"diagram is not planar near edges {', '.join(bad[:6])}")
    return True


# ---------------------------------------------------------------------------
# closed diagrams and resolutions


@dataclass(frozen=True)
class ClosedDiagram:
    """Crossings plus junctions: a closed diagram whose atoms are edge ids.

    A junction ``(a, b)`` joins an end of atom ``a`` to an end of atom ``b``
    (caps of a closure, or ``(a, a)`` for a free loop).
    """

    crossings: tuple
    junctions: tuple

    @property
    def N(self):
        return len(self.crossings)

    def atoms(self):
        out = set()
        for c in self.crossings:
            out.update(c)
        for a, b in self.junctions:
            out.update((a, b))
        return out


def closure(T, caps_inner=(), cap_outer=()):
    """The closed diagram b-bar . T . (a_1, ..., a_k) as crossings plus junctions.

    ``cap_outer`` is a matching on 1..n and ``caps_inner[k]`` a matching on the
    points of inner disk k.
    """
    if len(caps_inner) != len(T.inner):
        raise TangleError("one capping matching per inner disk is required")
    junc = [(l, l) for l in T.loops]
    for p, q in _check_matching(cap_outer, T.n):
        junc.append((T.boundary[p - 1], T.boundary[q - 1]))
    for k, a in enumerate(caps_inner):
        for p, q in _check_matching(a, T.inner[k]):
            junc.append((T.inner_boundary[k][p - 1], T.inner_boundary[k][q - 1]))
    return ClosedDiagram(T.crossings, tuple(junc))


def _check_matching(a, n):
    a = tuple(tuple(p) for p in a)
    pts = sorted(x for p in a for x in p)
    if pts != list(range(1, n + 1)):
        raise TangleError(f"{a} is not a perfect matching of {n} points")
    return a


class _UF:
    __slots__ = ("p",)

    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _key(e):
    return (type(e).__name__, e)


def resolution_components(cd, v):
    """Circles of the closed diagram at cube vertex ``v`` (an int bitmask).

    Returns ``(circles, where)``: ``circles`` is the sorted list of circle ids
    (the minimal atom of each circle) and ``where`` maps atom -> index.
    """
    uf = _UF(cd.atoms())
    for j, c in enumerate(cd.crossings):
        if (v >> j) & 1:
            uf.union(c[0], c[3]); uf.union(c[1], c[2])
        else:
            uf.union(c[0], c[1]); uf.union(c[2], c[3])
    for a, b in cd.junctions:
        uf.union(a, b)
    groups = {}
    for a in uf.p:
        groups.setdefault(uf.find(a), []).append(a)
    ids = {r: min(g, key=_key) for r, g in groups.items()}
    circles = sorted(ids.values(), key=_key)
    pos = {c: i for i, c in enumerate(circles)}
    where = {a: pos[ids[uf.find(a)]] for a in uf.p}
    return circles, where


@dataclass(frozen=True)
class FlatTangle:
    """A crossingless resolution: boundary arcs, closed circles, provenance."""

    arcs: tuple
    circles: tuple
    provenance: dict = field(compare=False, hash=False)


def resolve(T, v):
    """Resolve every crossing of ``T`` by the bits of ``v`` (sequence or int)."""
    if not isinstance(v, int):
        v = list(v)
        if len(v) != T.N:
            raise TangleError("vertex length differs from the crossing count")
        v = sum(int(b) << j for j, b in enumerate(v))
    validate(T, planar=False)
    # boundary ports are open ends: trace with a union-find over edges only
    uf = _UF(T.edges())
    for j, c in enumerate(T.crossings):
        if (v >> j) & 1:
            uf.union(c[0], c[3]); uf.union(c[1], c[2])
        else:
            uf.union(c[0], c[1]); uf.union(c[2], c[3])
    ports = [(("o", i + 1), e) for i, e in enumerate(T.boundary)]
    for k, b in enumerate(T.inner_boundary):
        ports += [(("i", k, j + 1), e) for j, e in enumerate(b)]
    by_root = {}
    for p, e in ports:
        by_root.setdefault(uf.find(e), []).append(p)
    for r, ps in by_root.items():
        if len(ps) != 2:
            raise TangleError("resolution produced an arc with a dangling end")
    arcs = tuple(sorted(tuple(ps) for ps in by_root.values()))
    groups = {}
    for e in uf.p:
        groups.setdefault(uf.find(e), []).append(e)
    prov, circles = {}, []
    arc_index = {tuple(ps): i for i, ps in enumerate(arcs)}
    for r, g in groups.items():
        if r in by_root:
            tag = ("arc", arc_index[tuple(by_root[r])])
        else:
            cid = min(g, key=_key)
            circles.append(cid)
            tag = ("circle", cid)
        for e in g:
            prov[e] = tag
    return FlatTangle(arcs, tuple(sorted(circles, key=_key)), prov)


# ---------------------------------------------------------------------------
# constructions


def relabel(T, mapping):
    """Rename edges via ``mapping`` (missing keys are kept)."""
    f = lambda e: mapping.get(e, e)
    return Tangle(T.n, T.inner, [tuple(map(f, c)) for c in T.crossings],
                  [f(e) for e in T.boundary], [[f(e) for e in b] for b in T.inner_boundary],
                  T.P, [f(e) for e in T.loops])


def offset(T, k):
    """Shift every (integer) edge id by ``k``."""
    return relabel(T, {e: e + k for e in T.edges()})


def max_edge(T):
    es = [e for e in T.edges() if isinstance(e, int)]
    return max(es, default=-1)


def matching_tangle(a, n, start=0):
    """The flat (;n)-tangle drawing the matching ``a`` (one edge per arc)."""
    bnd = [None] * n
    for k, (p, q) in enumerate(sorted(_check_matching(a, n))):
        bnd[p - 1] = bnd[q - 1] = start + k
    return Tangle(n=n, boundary=bnd)


def cap_tangle(a, n, start=0):
    """The flat (n;)-tangle drawing ``a`` inside the complement of a disk."""
    bnd = [None] * n
    for k, (p, q) in enumerate(sorted(_check_matching(a, n))):
        bnd[p - 1] = bnd[q - 1] = start + k
    return Tangle(n=0, inner=(n,), inner_boundary=(bnd,))


def identity_tangle(n, start=0):
    """The radial (n;n)-tangle: edge ``start + i`` joins inner and outer point i."""
    e = [start + i for i in range(n)]
    return Tangle(n=n, inner=(n,), boundary=e, inner_boundary=(e,))


def compose(T, i, S, keep="outer"):
    """Insert ``S`` into inner disk ``i`` of ``T``.

    Edge ids of ``S`` must be disjoint from those of ``T``.  Glued edge pairs
    keep the id from ``T`` (``keep="outer"``) or from ``S`` (``keep="inner"``).
    """
    if not 0 <= i < len(T.inner):
        raise TangleError(f"no inner disk {i}")
    if S.n != T.inner[i]:
        raise TangleError(f"arity mismatch: disk has {T.inner[i]} points, tangle has {S.n}")
    if T.edges() & S.edges():
        raise TangleError("edge ids of the two tangles overlap")
    t_side, s_side = T.edges(), S.edges()
    uf = _UF(t_side | s_side)
    for a, b in zip(T.inner_boundary[i], S.boundary):
        uf.union(a, b)
    groups = {}
    for e in uf.p:
        groups.setdefault(uf.find(e), []).append(e)
    pref_first = t_side if keep == "outer" else s_side
    alias = {}
    new_loops = []
    glued = set(T.inner_boundary[i]) | set(S.boundary)
    for g in groups.values():
        first = [e for e in g if e in pref_first]
        rep = min(first or g, key=_key)
        for e in g:
            alias[e] = rep
        if len(g) > 1 or g[0] in glued:
            # a glued class is closed when all of its ends were interface points
            ends = 0
            for e in g:
                ends += 2 if e in T.loops or e in S.loops else 0
            outer_ends = sum(1 for e in T.boundary if e in g)
            inner_ends = sum(1 for k, b in enumerate(T.inner_boundary) if k != i for e in b if e in g)
            inner_ends += sum(1 for b in S.inner_boundary for e in b if e in g)
            slots = sum(1 for c in T.crossings + S.crossings for e in c if e in g)
            if outer_ends + inner_ends + slots == 0:
                new_loops.append(rep)
    f = lambda e: alias.get(e, e)
    crossings = [tuple(map(f, c)) for c in T.crossings] + [tuple(map(f, c)) for c in S.crossings]
    inner = T.inner[:i] + S.inner + T.inner[i + 1:]
    ib = ([[f(e) for e in b] for b in T.inner_boundary[:i]]
          + [[f(e) for e in b] for b in S.inner_boundary]
          + [[f(e) for e in b] for b in T.inner_boundary[i + 1:]])
    loops = [f(e) for e in T.loops] + [f(e) for e in S.loops]
    loops += [l for l in dict.fromkeys(new_loops) if l not in loops]
    out = Tangle(T.n, inner, crossings, [f(e) for e in T.boundary], ib, T.P + S.P, loops)
    return out, alias


def mirror(T):
    """Planar reflection: reversed rotation at every crossing, reversed boundary.

    This swaps the 0- and 1-resolutions of every crossing.
    """
    if T.inner:
        raise TangleError("mirror is only defined for tangles without inner disks")
    xs = [(c[0], c[3], c[2], c[1]) for c in T.crossings]
    return Tangle(T.n, (), xs, list(reversed(T.boundary)), (), T.P, T.loops)


def close(a_tuple, T, b):
    """The closed tangle b-bar . T . (a_1, ..., a_k) with merged edges."""
    a_tuple = list(a_tuple)
    if len(a_tuple) != len(T.inner):
        raise TangleError("arity mismatch between caps and inner disks")
    cur = T
    for k in reversed(range(len(a_tuple))):
        S = matching_tangle(a_tuple[k], T.inner[k], start=max_edge(cur) + 1)
        cur, _ = compose(cur, k, S)
    if cur.n:
        C = cap_tangle(b, cur.n, start=max_edge(cur) + 1)
        out, _ = compose(C, 0, cur, keep="inner")
        return replace(out, P=cur.P)
    _check_matching(b, 0)
    return cur


def double(T):
    """The closed diagram T-bar T for a (;n)-tangle T, with P equal to N(T).

    The reflected copy sits outside the boundary circle; point i of ``T`` is
    joined to point i of the copy.
    """
    if T.inner:
        raise TangleError("double needs a tangle without inner disks")
    g = lambda e: ("m", e)
    xs = list(T.crossings) + [(g(c[0]), g(c[3]), g(c[2]), g(c[1])) for c in T.crossings]
    junc = [(l, l) for l in T.loops] + [(g(l), g(l)) for l in T.loops]
    junc += [(e, g(e)) for e in T.boundary]
    return ClosedDiagram(tuple(xs), tuple(junc))


def mirror_closed(cd):
    return ClosedDiagram(tuple((c[0], c[3], c[2], c[1]) for c in cd.crossings), cd.junctions)


def smoothing(T, j, bit):
    """Replace crossing ``j`` by its 0- or 1-smoothing (edges merged pairwise)."""
    c = T.crossings[j]
    pairs = [(c[0], c[3]), (c[1], c[2])] if bit else [(c[0], c[1]), (c[2], c[3])]
    rest = T.crossings[:j] + T.crossings[j + 1:]
    stub = Tangle(T.n, T.inner, rest, T.boundary, T.inner_boundary, T.P, T.loops)
    return merge_edge_pairs(stub, pairs)


def merge_edge_pairs(T, pairs):
    """Join edge ends pairwise (each pair loses the joined ends) and tidy ids."""
    uf = _UF(T.edges() | {e for p in pairs for e in p})
    for a, b in pairs:
        uf.union(a, b)
    groups = {}
    for e in uf.p:
        groups.setdefault(uf.find(e), []).append(e)
    alias = {e: min(g, key=_key) for g in groups.values() for e in g}
    f = lambda e: alias[e]
    used = {f(e) for c in T.crossings for e in c}
    used |= {f(e) for e in T.boundary}
    used |= {f(e) for b in T.inner_boundary for e in b}
    loops = {f(e) for e in T.loops}
    for g in groups.values():
        r = f(g[0])
        if r not in used:
            loops.add(r)
    out = Tangle(T.n, T.inner, [tuple(map(f, c)) for c in T.crossings], [f(e) for e in T.boundary],
                 [[f(e) for e in b] for b in T.inner_boundary], T.P, sorted(loops, key=_key))
    return out, alias


# ---------------------------------------------------------------------------
# orientation helpers


def strands(T):
    """Components traced straight through crossings (slots 0-2 and 1-3).

    Returns a list of components, each a list of ``(edge, direction)`` pairs,
    where direction +1 means travelling from the edge's first scan end to its
    second.
    """
    ends = edge_ends(T)
    seen, comps = set(), []
    for l in T.loops:
        seen.add(l)
        comps.append([(l, 1)])
    order = sorted(ends, key=_key)
    # start arcs at boundary ports first so open strands are traced whole
    starts = [e for e in order if any(p[0] != "x" for p in ends[e])] + order
    for e0 in starts:
        if e0 in seen:
            continue
        comp, e = [], e0
        d = -1 if ends[e0][0][0] == "x" and ends[e0][1][0] != "x" else 1
        while e not in seen:
            seen.add(e)
            comp.append((e, d))
            head = ends[e][1 if d == 1 else 0]
            if head[0] != "x":
                break
            _, ci, s = head
            out_port = ("x", ci, (s + 2) % 4)
            e = T.crossings[ci][(s + 2) % 4]
            d = 1 if ends[e][0] == out_port else -1
        comps.append(comp)
    return comps


def crossing_signs(T, flips=()):
    """Sign of every crossing for the orientation given by :func:`strands`.

    ``flips`` lists component indices whose orientation is reversed.
    """
    ends = edge_ends(T)
    comps = strands(T)
    direction = {}
    for k, comp in enumerate(comps):
        s = -1 if k in flips else 1
        for e, d in comp:
            direction[e] = d * s
    signs = []
    for ci, c in enumerate(T.crossings):
        def incoming(slot):
            e = c[slot]
            p = ends[e]
            # the edge enters the crossing at this slot if its head is here
            head = p[1] if direction[e] == 1 else p[0]
            return head == ("x", ci, slot)
        under_in0 = incoming(0)
        over_in3 = incoming(3)
        signs.append(1 if under_in0 == over_in3 else -1)
    return signs


def positive_count(T, flips=()):
    return sum(1 for s in crossing_signs(T, flips) if s > 0)


# ---------------------------------------------------------------------------
# JSON


def to_json(T):
    d = {"n": T.n, "inner": list(T.inner), "crossings": [list(c) for c in T.crossings],
         "boundary_edges": list(T.boundary),
         "inner_boundary_edges": [list(b) for b in T.inner_boundary], "P": T.P}
    if T.loops:
        d["loops"] = list(T.loops)
    return d


def from_json(d, planar=True):
    try:
        T = Tangle(n=d.get("n", 0), inner=d.get("inner", []), crossings=d.get("crossings", []),
                   boundary=d.get("boundary_edges", []),
                   inner_boundary=d.get("inner_boundary_edges", []),
                   P=d.get("P", 0), loops=d.get("loops", []))
    except TypeError as exc:
        raise TangleError(f"bad diagram record: {exc}") from None
    return validate(T, planar=planar)


def braid_tangle(k, word, P=None):
    """The (;2k)-tangle of a braid on ``k`` strands.

    ``word`` lists generators ``+-i`` (strands ``i`` and ``i+1`` cross, the
    sign is the crossing sign for strands oriented upwards).  Outer points
    ``1..k`` are the bottom ends from left to right and ``k+1..2k`` the top
    ends from right to left.  ``P`` defaults to the number of positive
    generators.
    """
    nid = 0
    cur = {}
    for p in range(1, k + 1):
        nid += 1
        cur[p] = nid
    bottom = dict(cur)
    xs = []
    for g in word:
        i, s = abs(g), (1 if g > 0 else -1)
        if not 1 <= i < k:
            raise TangleError(f"generator {g} out of range")
        BL, BR = cur[i], cur[i + 1]
        TL, TR = nid + 1, nid + 2
        nid += 2
        xs.append((BR, TR, TL, BL) if s > 0 else (BL, BR, TR, TL))
        cur[i], cur[i + 1] = TL, TR
    bnd = [bottom[p] for p in range(1, k + 1)] + [cur[p] for p in range(k, 0, -1)]
    if P is None:
        P = sum(1 for g in word if g > 0)
    return Tangle(n=2 * k, crossings=xs, boundary=bnd, P=P)
