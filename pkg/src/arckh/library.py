"""Bundled example diagrams and reference homology tables."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .homology import HomologyTable
from .tangles import from_json

DIAGRAMS = ("empty", "unknot", "unlink2", "unlink3", "hopf", "trefoil", "5_1", "5_2",
            "8_19", "K1", "5_2_smoothing")

#: crossing of the bundled 8_19 diagram whose two smoothings are 5_2 and K1
SADDLE_CROSSING_8_19 = 2


def _read(name):
    return json.loads(resources.files("arckh").joinpath("data").joinpath(name).read_text())


@lru_cache(maxsize=None)
def diagram(name):
    """A bundled diagram by name (see :data:`DIAGRAMS`)."""
    if name not in DIAGRAMS:
        raise KeyError(f"unknown diagram {name!r}; choose from {', '.join(DIAGRAMS)}")
    return from_json(_read(name + ".json"))


@lru_cache(maxsize=None)
def golden(name):
    """Reference homology table for ``5_2``, ``K1`` or ``8_19``."""
    return HomologyTable.from_json(_read("golden.json")[name])


def golden_names():
    return sorted(_read("golden.json"))


@lru_cache(maxsize=None)
def tangles(kind):
    """Named tangle families: ``bridges`` and ``duality``."""
    return {k: from_json(v) for k, v in _read("tangles.json")[kind].items()}


@lru_cache(maxsize=None)
def movie(name):
    from .moves import Movie

    return Movie.from_json(_read("movies.json")[name])


def movie_names():
    return sorted(_read("movies.json"))
