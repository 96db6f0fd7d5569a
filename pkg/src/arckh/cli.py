"""Command-line interface.

Usage::

    arckh kh <file> [--caps JSON]
    arckh map <file>
    arckh verify --suite <name> [--seed N]

Everything is printed as compact JSON on stdout in a fixed key order.  The
exit code is 0 on success, 1 when a verification case fails and 2 on bad
input.
``KH_THREADS`` bounds the number of worker processes used by ``verify``.

Diagram files
-------------
A diagram is a JSON object::

    {"n": 4, "inner": [], "crossings": [[1, 2, 3, 4], ...],
     "boundary_edges": [...], "inner_boundary_edges": [[...], ...], "P": 0,
     "loops": [...]}

Each crossing lists four edge ids counterclockwise starting at an end of the
under-strand; the 0-resolution joins slots 0-1 and 2-3.  Outer boundary
points are numbered ``1..n`` counterclockwise, inner points ``1..m`` per
disk.  ``loops`` holds ids of crossingless closed components.  ``P`` is the
integer that fixes the homological normalization (the number of positive
crossings for an oriented diagram).  A bare name such as ``unknot`` or
``5_2`` refers to a bundled diagram.

Movie files
-----------
``{"start": <diagram>, "steps": [{"kind": ..., params}, ...]}``.  Step kinds
and their parameters:

- ``birth`` (``id``), ``death`` (``id``), ``dot`` (``edge``)
- ``saddle`` (``edges`` = two edge ids, optional ``sides``, ``new``)
- ``r1_add`` (``edge``, ``sign``, ``side``), ``r1_remove`` (``crossing``)
- ``r2_add`` (``over``, ``over_side``, ``under``, ``under_side``),
  ``r2_remove`` (``crossings``)
- ``r3`` (``crossings`` = three indices)
- ``isotopy`` (``rename`` = list of id pairs, ``order``, ``rotate``)

A bare name refers to a bundled movie.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import library
from .cobordisms import movie_map
from .homology import ComplexError, homology
from .khovanov import kh_complex
from .moves import Movie, MovieError
from .tangles import TangleError, from_json


class InputError(ValueError):
    """Bad command-line input."""


def _load(path, bundled):
    if not os.path.exists(path) and path in bundled:
        return None
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_diagram(path):
    d = _load(path, library.DIAGRAMS)
    return library.diagram(path) if d is None else from_json(d)


def load_movie(path):
    d = _load(path, library.movie_names())
    if d is None:
        return library.movie(path)
    try:
        return Movie.from_json(d)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad movie record: {exc}") from None


def parse_caps(text, T):
    """``--caps`` value: an outer matching or ``{"inner": [...], "outer": [...]}``."""
    try:
        c = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--caps is not valid JSON: {exc}") from None
    if isinstance(c, dict):
        inner, outer = c.get("inner", []), c.get("outer", [])
    else:
        inner, outer = [], c
    if len(inner) != len(T.inner):
        raise InputError(f"the diagram has {len(T.inner)} inner disks, got {len(inner)} caps")
    fix = lambda a: tuple(tuple(p) for p in a)
    return tuple(fix(a) for a in inner), fix(outer)


def cmd_kh(args):
    T = load_diagram(args.file)
    if args.caps is None:
        if T.n or T.inner:
            raise InputError("an open tangle needs --caps")
        inner, outer = (), ()
    else:
        inner, outer = parse_caps(args.caps, T)
    return homology(kh_complex(T, inner, outer)).to_json(), 0


def _sparse(f):
    return sorted([j, i, c] for j, col in f.m.items() for i, c in col.items())


def cmd_map(args):
    m = load_movie(args.file)
    F = movie_map(m)
    P, chi = m.bookkeeping()
    out = {"P": P, "chi": chi, "qdegree": m.qdegree(), "maps": []}
    for b in F.caps:
        f = F[b]
        ind = f.induced()
        out["maps"].append({
            "cap": [list(p) for p in b],
            "bidegree": list(f.bidegree),
            "source_dim": f.source.dim,
            "target_dim": f.target.dim,
            "entries": _sparse(f),
            "induced": [{"h": h, "q": q, "matrix": mat} for (h, q), mat in sorted(ind.items())],
        })
    return out, 0


def cmd_verify(args):
    from .verification import run

    try:
        reports = run(args.suite, seed=args.seed)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    return reports, 0 if all(r["passed"] for r in reports) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="arckh", description="Khovanov homology of diskular tangles")
    sub = p.add_subparsers(dest="command", required=True)
    k = sub.add_parser("kh", help="homology table of a diagram")
    k.add_argument("file")
    k.add_argument("--caps", help="JSON matching (or {\"inner\":[...],\"outer\":[...]})")
    k.set_defaults(func=cmd_kh)
    m = sub.add_parser("map", help="chain maps induced by a movie")
    m.add_argument("file")
    m.set_defaults(func=cmd_map)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", required=True,
                   help="movie-moves, rigidity, duality, gluing, euler, neckcut, ribbon or all")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except (InputError, TangleError, MovieError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    json.dump(out, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
