"""The Frobenius algebra V = Z[X]/(X^2) acting on labeled planar circles.

Labels are stored as small integers: ``ONE = 0`` and ``X = 1``.  A
:class:`TqftVector` is a sparse integer combination of labelings of one
fixed set of circles.  Circle identifiers are opaque hashable tokens chosen
by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Label(IntEnum):
    ONE = 0
    X = 1

    @property
    def qdeg(self):
        return -1 if self is Label.ONE else 1


ONE, X = Label.ONE, Label.X

# generator-level tables, reused by the cube builder
MERGE = {(0, 0): 0, (0, 1): 1, (1, 0): 1}          # (X,X) -> 0
SPLIT = {0: ((0, 1), (1, 0)), 1: ((1, 1),)}


def _order(c):
    return (type(c).__name__, c)


@dataclass(frozen=True)
class LabeledOneManifold:
    """A closed planar 1-manifold with one label per circle."""

    circles: tuple
    labels: tuple

    def __post_init__(self):
        if len(set(self.circles)) != len(self.circles):
            raise ValueError("circle identifiers must be distinct")
        if len(self.labels) != len(self.circles):
            raise ValueError("every circle needs exactly one label")

    @property
    def qdeg(self):
        return sum(Label(l).qdeg for l in self.labels)

    def as_dict(self):
        return dict(zip(self.circles, self.labels))


class TqftVector:
    """Integer combination of labelings of a fixed ordered set of circles.

    Parameters
    ----------
    circles : iterable
        Circle identifiers.  They are stored in a canonical sorted order.
    terms : dict, optional
        Maps a labeling to its coefficient.  A labeling is either a tuple of
        labels aligned with the given circle order or a dict circle -> label.
    """

    def __init__(self, circles=(), terms=None):
        given = tuple(circles)
        self.circles = tuple(sorted(given, key=_order))
        if len(set(self.circles)) != len(self.circles):
            raise ValueError("circle identifiers must be distinct")
        perm = [given.index(c) for c in self.circles]
        self.terms = {}
        for lab, coef in (terms or {}).items():
            if isinstance(lab, dict):
                if set(lab) != set(self.circles):
                    raise ValueError("labeling does not cover the circles")
                key = tuple(int(lab[c]) for c in self.circles)
            else:
                if len(lab) != len(given):
                    raise ValueError("labeling has the wrong length")
                key = tuple(int(lab[i]) for i in perm)
            if any(l not in (0, 1) for l in key):
                raise ValueError("labels must be ONE or X")
            self._add(key, coef)

    @classmethod
    def generator(cls, labeling, coef=1):
        """Vector with a single term from a dict circle -> label."""
        return cls(tuple(labeling), {tuple(int(l) for l in labeling.values()): coef})

    def _add(self, key, coef):
        c = self.terms.get(key, 0) + coef
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def index(self, c):
        try:
            return self.circles.index(c)
        except ValueError:
            raise KeyError(f"unknown circle {c!r}") from None

    def __eq__(self, other):
        if not isinstance(other, TqftVector):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.circles == other.circles and self.terms == other.terms

    def __add__(self, other):
        if self.circles != other.circles:
            raise ValueError("vectors live on different manifolds")
        out = TqftVector(self.circles, dict(self.terms))
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __rmul__(self, scalar):
        return TqftVector(self.circles, {k: scalar * c for k, c in self.terms.items()})

    def __repr__(self):
        names = {0: "1", 1: "X"}
        parts = []
        for k, c in sorted(self.terms.items()):
            lab = ",".join(f"{ci}:{names[l]}" for ci, l in zip(self.circles, k))
            parts.append(f"{c}*{{{lab}}}")
        return " + ".join(parts) or "0"

    def qdegrees(self):
        """Set of quantum gradings of the terms (sum of label gradings)."""
        return {sum(1 if l else -1 for l in k) for k in self.terms}


def _rebuild(v, new_circles, fn):
    out = TqftVector(new_circles)
    order = out.circles
    for key, coef in v.terms.items():
        for lab, c in fn(dict(zip(v.circles, key))):
            out._add(tuple(lab[x] for x in order), coef * c)
    return out


def apply_merge(v, c1, c2, c_new):
    """Multiply the labels of circles ``c1`` and ``c2`` into ``c_new``."""
    if c1 == c2:
        raise ValueError("merge needs two distinct circles")
    v.index(c1), v.index(c2)
    rest = [c for c in v.circles if c not in (c1, c2)]
    if c_new in rest:
        raise ValueError(f"circle id {c_new!r} already used")

    def fn(lab):
        m = MERGE.get((lab[c1], lab[c2]))
        if m is None:
            return []
        new = {c: lab[c] for c in rest}
        new[c_new] = m
        return [(new, 1)]

    return _rebuild(v, rest + [c_new], fn)


def apply_split(v, c, c1, c2):
    """Comultiplication: 1 -> 1(x)X + X(x)1 and X -> X(x)X."""
    v.index(c)
    rest = [x for x in v.circles if x != c]
    if c1 == c2 or c1 in rest or c2 in rest:
        raise ValueError("split needs two fresh circle ids")

    def fn(lab):
        out = []
        for a, b in SPLIT[lab[c]]:
            new = {x: lab[x] for x in rest}
            new[c1], new[c2] = a, b
            out.append((new, 1))
        return out

    return _rebuild(v, rest + [c1, c2], fn)


def apply_birth(v, c_new):
    """Add a new circle labeled 1 (the unit)."""
    if c_new in v.circles:
        raise ValueError(f"circle id {c_new!r} already used")
    return _rebuild(v, list(v.circles) + [c_new], lambda lab: [({**lab, c_new: 0}, 1)])


def apply_death(v, c):
    """Counit: X -> 1, 1 -> 0 on circle ``c``."""
    v.index(c)
    rest = [x for x in v.circles if x != c]

    def fn(lab):
        if lab[c] == 1:
            return [({x: lab[x] for x in rest}, 1)]
        return []

    return _rebuild(v, rest, fn)


def apply_dot(v, c):
    """Multiplication by X on circle ``c``."""
    v.index(c)

    def fn(lab):
        if lab[c] == 1:
            return []
        return [({**lab, c: 1}, 1)]

    return _rebuild(v, list(v.circles), fn)
