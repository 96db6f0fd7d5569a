"""Elementary cobordisms as edits of diskular PD codes, and movies.

Every step acts on a :class:`~arckh.tangles.Tangle` and returns the new
tangle together with the data the chain-map layer needs.  Morse moves act
only on tangles without inner disks.  Edges are oriented from their first to their second end in scan order (see
:mod:`arckh.tangles`); ``"L"``/``"R"`` name the sides of an edge for that
orientation.

Conventions for the local models (our choice, documented in the README):

* ``r1_add`` splits an edge ``e`` into ``e`` (towards its first end), a loop
  edge and a fresh edge (towards its second end).  The kink sits on the given
  side of ``e``; its sign is the sign of the new crossing.
* ``r2_add`` pushes ``over`` across ``under``; both edges keep their id on the
  piece towards their first end and get fresh ids for the bigon side and the
  far piece.
* ``r3`` moves the strand opposite a triangle face across the crossing of the
  other two; triangle edge ids are kept and each crossing keeps its position.
* New crossings are appended at the end of the crossing list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .tangles import (Tangle, TangleError, _UF, _key, check_planar, edge_ends, from_json,
                      max_edge, to_json)


class MovieError(TangleError):
    """A step does not apply to the current diagram."""


def _fresh(T, k=1, avoid=()):
    start = max([max_edge(T)] + [a for a in avoid if isinstance(a, int)]) + 1
    return list(range(start, start + k))


def _rebuild(T, crossings=None, boundary=None, loops=None, P=None):
    return Tangle(T.n, T.inner, T.crossings if crossings is None else crossings,
                  T.boundary if boundary is None else boundary, T.inner_boundary,
                  T.P if P is None else P, T.loops if loops is None else loops)


def _set_ports(T, assign, drop_loops=(), add_loops=(), extra_crossings=(), P=None):
    """Rewrite edge ids at ports; ``assign`` maps port -> new edge id."""
    xs = [list(c) for c in T.crossings]
    bnd = list(T.boundary)
    ib = [list(b) for b in T.inner_boundary]
    for port, e in assign.items():
        if port[0] == "x":
            xs[port[1]][port[2]] = e
        elif port[0] == "o":
            bnd[port[1]] = e
        else:
            ib[port[1]][port[2]] = e
    xs += [list(c) for c in extra_crossings]
    loops = [l for l in T.loops if l not in drop_loops] + list(add_loops)
    out = _rebuild(T, crossings=xs, boundary=bnd, loops=loops, P=P)
    return replace(out, inner_boundary=tuple(tuple(b) for b in ib))


def _ends(T, e):
    ends = edge_ends(T)
    if e not in ends:
        raise MovieError(f"no edge {e!r}")
    return ends[e]


def _flip(side):
    return "R" if side == "L" else "L"


# ---------------------------------------------------------------------------
# Morse moves and dots


def saddle(T, e, f, sides=None, new=None):
    """Saddle joining edges ``e`` and ``f`` across a common face.

    With ``sides`` omitted the unique planar option is used.

    Returns ``(T', info)``; ``info`` has ``merge_of`` (the source atoms whose
    circles meet) and ``result`` (target atoms of the one or two resulting
    pieces).
    """
    if T.inner:
        raise MovieError("movie steps act on tangles without inner disks")
    le, lf = e in T.loops, f in T.loops
    pe, pf = _ends(T, e), _ends(T, f)
    if e == f:
        g = new if new is not None else _fresh(T)[0]
        if g in T.edges():
            raise MovieError(f"edge id {g!r} already used")
        T2 = _set_ports(T, {}, add_loops=[g])
        return T2, {"src": (e, e), "tgt": (e, g)}
    if le and lf:
        T2 = _set_ports(T, {}, drop_loops=[f])
        return T2, {"src": (e, f), "tgt": (e, e)}
    if le or lf:
        keep, loop = (f, e) if le else (e, f)
        T2 = _set_ports(T, {}, drop_loops=[loop])
        return T2, {"src": (e, f), "tgt": (keep, keep)}
    options = []
    if sides is None:
        options = ["X", "Y"]
    else:
        options = ["X" if sides[0] == sides[1] else "Y"]
    found = []
    for opt in options:
        # X joins e.end0 with f.end1; Y joins e.end0 with f.end0
        fa, fb = (pf[1], pf[0]) if opt == "X" else (pf[0], pf[1])
        T2 = _set_ports(T, {pe[0]: e, fa: e, pe[1]: f, fb: f})
        try:
            check_planar(T2)
        except TangleError:
            continue
        found.append(T2)
    if not found:
        raise MovieError(f"edges {e!r} and {f!r} do not share a face")
    if len(found) > 1:
        raise MovieError(f"saddle between {e!r} and {f!r} is ambiguous: give the sides")
    return found[0], {"src": (e, f), "tgt": (e, f)}


def birth(T, c=None):
    c = _fresh(T)[0] if c is None else c
    if c in T.edges():
        raise MovieError(f"edge id {c!r} already used")
    return _set_ports(T, {}, add_loops=[c]), {"new": c}


def death(T, c):
    if c not in T.loops:
        raise MovieError(f"{c!r} is not a crossingless circle")
    return _set_ports(T, {}, drop_loops=[c]), {"old": c}


def dot(T, e):
    if e not in T.edges():
        raise MovieError(f"no edge {e!r}")
    return T, {"edge": e}


def isotopy(T, rename=None, order=None, rotate=()):
    """Rename edges, reorder crossings and turn crossings by half a turn.

    ``order[k]`` is the old index of new crossing ``k``; crossings listed in
    ``rotate`` (new indices) have their slots shifted by two, which describes
    the same crossing.
    """
    rename = dict(rename or {})
    f = lambda x: rename.get(x, x)
    xs = list(T.crossings)
    if order is not None:
        if sorted(order) != list(range(T.N)):
            raise MovieError("crossing order must be a permutation")
        xs = [xs[k] for k in order]
    xs = [c[2:] + c[:2] if k in set(rotate) else c for k, c in enumerate(xs)]
    out = Tangle(T.n, T.inner, [tuple(map(f, c)) for c in xs], [f(e) for e in T.boundary],
                 [[f(e) for e in b] for b in T.inner_boundary], T.P, [f(e) for e in T.loops])
    if len(out.edges()) != len(T.edges()):
        raise MovieError("rename map is not injective")
    return out, {"rename": rename, "order": list(order) if order is not None else list(range(T.N))}


def find_isotopy(A, B):
    """An isotopy step taking ``A`` to ``B`` exactly, or ``None``.

    Searches crossing bijections (with half turns) that induce a consistent
    edge bijection; free loops are matched in sorted order.
    """
    from itertools import permutations, product

    if (A.n, A.inner, A.N, len(A.loops), A.P) != (B.n, B.inner, B.N, len(B.loops), B.P):
        return None
    for order in permutations(range(A.N)):
        for rot in product((0, 1), repeat=A.N):
            m = {}
            ok = True
            pairs = []
            for k, old in enumerate(order):
                c = A.crossings[old]
                c = c[2:] + c[:2] if rot[k] else c
                pairs += zip(c, B.crossings[k])
            pairs += zip(A.boundary, B.boundary)
            for ba, bb in zip(A.inner_boundary, B.inner_boundary):
                pairs += zip(ba, bb)
            pairs += zip(sorted(A.loops, key=_key), sorted(B.loops, key=_key))
            for a, b in pairs:
                if m.setdefault(a, b) != b:
                    ok = False
                    break
            if not ok or len(set(m.values())) != len(m):
                continue
            step = Step("isotopy", {"rename": {a: b for a, b in m.items() if a != b},
                                    "order": list(order),
                                    "rotate": [k for k in range(A.N) if rot[k]]})
            if step.apply(A)[0] == B:
                return step
    return None


# ---------------------------------------------------------------------------
# Reidemeister moves


def kink_sign(c, loop):
    """Sign of a kink crossing whose loop edge is ``loop``."""
    slots = tuple(i for i, x in enumerate(c) if x == loop)
    if len(slots) != 2:
        raise MovieError("not a kink")
    return 1 if set(slots) in ({0, 1}, {2, 3}) else -1


_KINKS = {
    # (sign, side) -> slot layout as (e, e', l) markers
    (1, "L"): "eEll", (1, "R"): "Eell", (-1, "L"): "leEl", (-1, "R"): "ellE",
}


def r1_add(T, e, sign=1, side="L", new=None):
    """Add a kink on edge ``e``; returns ``(T', info)`` with the new crossing last."""
    if sign not in (1, -1) or side not in ("L", "R"):
        raise MovieError("sign must be +-1 and side L or R")
    pe = _ends(T, e)
    l, e2 = new if new is not None else _fresh(T, 2)
    if {l, e2} & T.edges():
        raise MovieError("new edge ids collide")
    loop = e in T.loops
    if loop:
        e2 = e
    pat = _KINKS[(sign, side)]
    c = tuple({"e": e, "E": e2, "l": l}[ch] for ch in pat)
    assign = {} if loop else {pe[1]: e2}
    drop = [e] if loop else []
    T2 = _set_ports(T, assign, drop_loops=drop, extra_crossings=[c],
                    P=T.P + (1 if sign > 0 else 0))
    return T2, {"crossing": T.N, "sign": sign, "circle_bit": 0 if sign > 0 else 1,
                "loop": l, "small": T}


def r1_remove(T, j):
    """Remove the kink at crossing ``j``."""
    c = T.crossings[j]
    loops = sorted((x for x in set(c) if c.count(x) == 2 and _adjacent(c, x)),
                   key=_key, reverse=True)
    loop = None
    for x in loops:
        if len(_ends(T, x)) == 2 and all(p[:2] == ("x", j) for p in _ends(T, x)):
            loop = x
            break
    if loop is None:
        raise MovieError(f"crossing {j} is not a kink")
    sign = kink_sign(c, loop)
    others = [x for x in c if x != loop]
    a, b = others
    rest = [x for k, x in enumerate(T.crossings) if k != j]
    T1 = _rebuild(T, crossings=rest)
    if a == b:
        # the strand closes up into a crossingless circle
        T2 = _rebuild(T1, loops=list(T1.loops) + [a])
        keep = a
    else:
        keep = min(a, b, key=_key)
        drop = b if keep == a else a
        ends = edge_ends(T1)
        port = ends[drop][0]
        T2 = _set_ports(T1, {port: keep})
    T2 = replace(T2, P=T.P - (1 if sign > 0 else 0))
    return T2, {"crossing": j, "sign": sign, "circle_bit": 0 if sign > 0 else 1,
                "loop": loop, "small": T2}


def _adjacent(c, x):
    s = [i for i, y in enumerate(c) if y == x]
    return len(s) == 2 and (s[1] - s[0]) % 4 in (1, 3)


def r2_add(T, over, over_side, under, under_side, new=None):
    """Push edge ``over`` across edge ``under`` creating a bigon.

    ``over_side`` is the side of ``over`` facing ``under`` and vice versa.
    """
    if over == under:
        raise MovieError("an R2 move needs two different edges")
    pe, pf = _ends(T, over), _ends(T, under)
    e, f = over, under
    e2, e3, f2, f3 = new if new is not None else _fresh(T, 4)
    if {e2, e3, f2, f3} & T.edges():
        raise MovieError("new edge ids collide")
    if e in T.loops:
        e3 = e
    if f in T.loops:
        f3 = f
    s_e = over_side if under_side == "L" else _flip(over_side)
    e_left, e_right = (e, e3) if s_e == "R" else (e3, e)
    c_left = [f, e2, f2, e_left]
    c_right = [f2, e2, f3, e_right]
    if under_side == "R":
        c_left = [c_left[0], c_left[3], c_left[2], c_left[1]]
        c_right = [c_right[0], c_right[3], c_right[2], c_right[1]]
    assign = {}
    if e not in T.loops:
        assign[pe[1]] = e3
    if f not in T.loops:
        assign[pf[1]] = f3
    drop = [x for x in (e, f) if x in T.loops]
    T2 = _set_ports(T, assign, drop_loops=drop, extra_crossings=[c_left, c_right], P=T.P + 1)
    check_planar(T2)
    return T2, {"crossings": (T.N, T.N + 1), "bigon": (e2, f2), "small": T}


def _bigon(T, i, j):
    """Edges ``(over, under)`` bounding a bigon between crossings ``i`` and ``j``.

    When several bigons qualify (two overlapping circles) the one with the
    largest edge ids is taken.
    """
    ci, cj = T.crossings[i], T.crossings[j]
    shared = [x for x in set(ci) if x in cj and ci.count(x) == 1 and cj.count(x) == 1]
    over = [x for x in shared if x in (ci[1], ci[3]) and x in (cj[1], cj[3])]
    under = [x for x in shared if x in (ci[0], ci[2]) and x in (cj[0], cj[2])]
    if len(shared) < 2:
        raise MovieError(f"crossings {i} and {j} do not bound a bigon")
    if not over or not under:
        raise MovieError("the same strand must pass over at both crossings")
    # a bigon face has its two corners in opposite rotational order
    for o in sorted(over, key=_key, reverse=True):
        for u in sorted(under, key=_key, reverse=True):
            di = (ci.index(o) - ci.index(u)) % 4
            dj = (cj.index(o) - cj.index(u)) % 4
            if di != dj:
                return [o, u]
    raise MovieError(f"the edges shared by crossings {i} and {j} do not bound a face")


def r2_remove(T, i, j):
    """Remove the bigon formed by crossings ``i`` and ``j``."""
    ci, cj = T.crossings[i], T.crossings[j]
    shared = _bigon(T, i, j)
    pairs = []
    for c in (ci, cj):
        for s in range(4):
            if c[s] in shared:
                pairs.append((c[s], c[(s + 2) % 4]))
    # each shared edge continues straight through both crossings
    strands = {}
    for x in shared:
        outs = [o for y, o in pairs if y == x]
        strands[x] = outs
    rest = [c for k, c in enumerate(T.crossings) if k not in (i, j)]
    T1 = _rebuild(T, crossings=rest, P=T.P - 1)
    # the two outer ends of each bigon edge become one edge; chains of such
    # joins (a kink next to the bigon) are merged transitively
    uf = _UF({o for outs in strands.values() for o in outs})
    for a, b in strands.values():
        uf.union(a, b)
    classes = {}
    for e in uf.p:
        classes.setdefault(uf.find(e), []).append(e)
    ends = edge_ends(T1)
    loops = list(T1.loops)
    assign = {}
    for members in classes.values():
        keep = min(members, key=_key)
        if not any(ends.get(e) for e in members):
            loops.append(keep)
            continue
        for e in members:
            if e != keep:
                for p in ends.get(e, []):
                    assign[p] = keep
    T2 = _set_ports(replace(T1, loops=loops), assign)
    return T2, {"crossings": (i, j), "small": T2}


def _triangle(T, idx):
    if len(set(idx)) != 3:
        raise MovieError("an R3 move needs three crossings")
    xs = [T.crossings[k] for k in idx]
    tri = {}
    for a in range(3):
        for b in range(a + 1, 3):
            sh = [x for x in set(xs[a]) if x in xs[b]]
            if len(sh) != 1:
                raise MovieError("crossings do not form a triangle")
            tri[(a, b)] = sh[0]
    return xs, tri


def r3(T, i, j, k):
    """Slide a strand across the crossing of the other two (triangle move)."""
    idx = (i, j, k)
    xs, tri = _triangle(T, idx)
    tri_edges = set(tri.values())
    where = {}
    for a, c in enumerate(xs):
        for s, x in enumerate(c):
            where.setdefault(x, []).append((a, s))

    def partner(a, s):
        # follow the strand through slot s+2 along a triangle edge to the next crossing
        t = xs[a][(s + 2) % 4]
        if t not in tri_edges:
            raise MovieError("strand does not run through the triangle")
        (b, sb), = [(b, sb) for b, sb in where[t] if b != a]
        o = xs[b][(sb + 2) % 4]
        return o

    new = []
    for a, c in enumerate(xs):
        nc = list(c)
        for s in range(4):
            if c[s] not in tri_edges:
                nc[s] = partner(a, s)
        new.append(tuple(nc))
    out = list(T.crossings)
    for a, kk in enumerate(idx):
        out[kk] = new[a]
    T2 = _rebuild(T, crossings=out)
    try:
        check_planar(T2)
    except TangleError:
        raise MovieError("crossings do not admit a planar triangle move") from None
    _check_heights(T, idx, tri_edges)
    return T2, {"crossings": idx}


def _check_heights(T, idx, tri_edges):
    """Each strand through the triangle must be top, middle or bottom consistently."""
    xs = [T.crossings[k] for k in idx]
    atoms = {}
    for a, c in enumerate(xs):
        for s in range(4):
            atoms.setdefault(c[s], []).append((a, s))
    # strand id per (crossing, parity): union over triangle edges
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for x, occ in atoms.items():
        if x in tri_edges and len(occ) == 2:
            (a, s), (b, t) = occ
            parent[find((a, s % 2))] = find((b, t % 2))
    levels = {}
    for a in range(3):
        for par in (0, 1):
            r = find((a, par))
            levels.setdefault(r, []).append(par)
    kinds = sorted(tuple(sorted(v)) for v in levels.values())
    if kinds != [(0, 0), (0, 1), (1, 1)]:
        raise MovieError("the three strands are not stacked top, middle and bottom")


# ---------------------------------------------------------------------------
# steps and movies


KINDS = ("isotopy", "birth", "death", "saddle", "dot", "r1_add", "r1_remove",
         "r2_add", "r2_remove", "r3")


@dataclass(frozen=True)
class Step:
    """One elementary cobordism: ``kind`` plus its parameters."""

    kind: str
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MovieError(f"unknown step kind {self.kind!r}")

    def apply(self, T):
        p = self.params
        k = self.kind
        if k == "isotopy":
            return isotopy(T, p.get("rename"), p.get("order"), p.get("rotate", ()))
        if k == "birth":
            return birth(T, p.get("id"))
        if k == "death":
            return death(T, p["id"])
        if k == "saddle":
            e, f = p["edges"]
            return saddle(T, e, f, p.get("sides"), p.get("new"))
        if k == "dot":
            return dot(T, p["edge"])
        if k == "r1_add":
            return r1_add(T, p["edge"], p.get("sign", 1), p.get("side", "L"), p.get("new"))
        if k == "r1_remove":
            return r1_remove(T, p["crossing"])
        if k == "r2_add":
            return r2_add(T, p["over"], p.get("over_side", "L"), p["under"],
                          p.get("under_side", "L"), p.get("new"))
        if k == "r2_remove":
            return r2_remove(T, *p["crossings"])
        return r3(T, *p["crossings"])

    def to_json(self):
        d = {"kind": self.kind}
        for k, v in self.params.items():
            d[k] = [list(x) for x in v.items()] if k == "rename" else v
        return d

    @classmethod
    def from_json(cls, d):
        p = {k: v for k, v in d.items() if k != "kind"}
        if "rename" in p and isinstance(p["rename"], list):
            p["rename"] = {a: b for a, b in p["rename"]}
        return cls(d["kind"], p)


def S(kind, **params):
    """Shorthand constructor for a :class:`Step`."""
    return Step(kind, params)


def step_bookkeeping(kind, info):
    """``(P, chi', dots)`` contribution of one applied step."""
    if kind == "saddle":
        return 0, -1, 0
    if kind in ("birth", "death"):
        return 0, 1, 0
    if kind == "dot":
        return 0, 0, 1
    if kind == "r1_add":
        return (1 if info["sign"] > 0 else 0), 0, 0
    if kind == "r1_remove":
        return (-1 if info["sign"] > 0 else 0), 0, 0
    if kind == "r2_add":
        return 1, 0, 0
    if kind == "r2_remove":
        return -1, 0, 0
    return 0, 0, 0


@dataclass
class Movie:
    """A start tangle and a list of elementary steps."""

    start: Tangle
    steps: list

    def frames(self):
        """Apply the steps: returns ``[(T_0, None), (T_1, info_1), ...]``."""
        out = [(self.start, None)]
        T = self.start
        for i, st in enumerate(self.steps):
            try:
                T, info = st.apply(T)
            except (TangleError, KeyError, IndexError, TypeError, ValueError) as exc:
                raise MovieError(f"step {i} ({st.kind}) does not apply: {exc}") from None
            out.append((T, info))
        return out

    def end(self):
        return self.frames()[-1][0]

    def bookkeeping(self):
        """``(P, chi')`` of the movie."""
        P = chi = 0
        for st, (_, info) in zip(self.steps, self.frames()[1:]):
            p, c, _ = step_bookkeeping(st.kind, info)
            P += p
            chi += c
        return P, chi

    def dots(self):
        return sum(1 for s in self.steps if s.kind == "dot")

    def qdegree(self):
        """Quantum degree of the induced map: ``-chi' + 2 * dots``."""
        return -self.bookkeeping()[1] + 2 * self.dots()

    def reversed_steps_ok(self):
        return all(s.kind in ("birth", "saddle", "isotopy") or s.kind.startswith("r")
                   for s in self.steps)

    def then(self, *steps):
        return Movie(self.start, list(self.steps) + list(steps))

    def to_json(self):
        return {"start": to_json(self.start), "steps": [s.to_json() for s in self.steps]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d):
        return cls(from_json(d["start"]), [Step.from_json(s) for s in d.get("steps", [])])


def bookkeeping(m):
    """``(P, chi')`` of a movie."""
    return m.bookkeeping()


# ---------------------------------------------------------------------------
# random diagrams


def flat_annular(m, n, rng):
    """A random crossingless (m; n)-tangle (``m = 0`` for no inner disk).

    Points are listed around the cut annulus, outer points ``1..n`` then inner
    points ``m..1``, and joined by a random noncrossing matching.
    """
    from .tangles import enumerate_matchings

    pts = [("o", i) for i in range(n)] + [("i", j) for j in reversed(range(m))]
    a = rng.choice(enumerate_matchings(m + n))
    bnd, ib = [None] * n, [None] * m
    for k, (p, q) in enumerate(a):
        for x in (p, q):
            side, i = pts[x - 1]
            if side == "o":
                bnd[i] = k
            else:
                ib[i] = k
    inner = (m,) if m else ()
    return Tangle(n, inner, (), bnd, (ib,) if m else (), 0, ())


def random_tangle(m, n, crossings, rng, tries=200):
    """A random diagram with an inner disk of ``m`` points (none if 0) and ``n`` outer points.

    Crossings are created by random R1 and R2 moves on a random flat tangle,
    so every result is planar; ``P`` is the one the moves assign.
    """
    for _ in range(tries):
        T = flat_annular(m, n, rng)
        ok = True
        while T.N < crossings:
            es = sorted(T.edges(), key=_key)
            if crossings - T.N >= 2 and len(es) > 1 and rng.random() < 0.7:
                e, f = rng.sample(es, 2)
                opts = [(s1, s2) for s1 in "LR" for s2 in "LR"]
                rng.shuffle(opts)
                for s1, s2 in opts:
                    try:
                        T, _ = r2_add(T, e, s1, f, s2)
                        break
                    except TangleError:
                        continue
                else:
                    continue
            else:
                T, _ = r1_add(T, rng.choice(es), rng.choice((1, -1)), rng.choice("LR"))
        if T.N != crossings:
            ok = False
        if ok:
            return T
    raise MovieError("could not generate a random tangle")
