"""Named small objects: the groups, spaces and G-spaces every check is tried on."""

import re
from itertools import product as cartesian
from typing import Callable

from segal.bisimplicial.space import SimplicialSpace
from segal.core import DEFAULT_TRUNCATION, MalformedInputError
from segal.groups.constructions import (
    GMap,
    GSpace,
    disjoint_copies,
    from_generator_action,
    point_space,
    translation,
    trivial_action,
)
from segal.groups.finite import FiniteGroup, cyclic, symmetric, trivial
from segal.simplicial.constructions import product
from segal.simplicial.sset import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    basic_complex,
    constant_map,
    delta,
    discrete,
    point,
    to_point,
)

GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "S3": lambda: symmetric(3),
    "1": trivial,
}

SPACES = ("pt", "2pts", "delta0", "delta1", "delta2", "delta3", "boundary3", "circle", "torus")

GSPACES = ("pt", "translation", "double", "circle_trivial", "swap")

_DELTA = re.compile(r"^delta(\d+)$")
_BOUNDARY = re.compile(r"^boundary(\d+)$")
_HORN = re.compile(r"^horn(\d+)_(\d+)$")


def group(name: str) -> FiniteGroup:
    """Z2, Z3, S3 or 1; `Z/n` and `Zn` work for any n."""

    key = name.replace("/", "")
    if key in GROUPS:
        return GROUPS[key]()
    if re.match(r"^Z\d+$", key):
        return cyclic(int(key[1:]))
    if re.match(r"^S\d$", key):
        return symmetric(int(key[1:]))
    raise MalformedInputError(f"Unknown group: {name}")


def space(name: str, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    if name == "pt":
        return point(truncation)
    elif name == "2pts":
        return discrete(["a", "b"], truncation, "2pts")
    elif name == "circle":
        return basic_complex("circle", truncation=truncation)
    elif name == "torus":
        circle = basic_complex("circle", truncation=truncation)
        T = product(circle, circle).sset
        T.name = "S^1xS^1"
        return T
    elif match := _DELTA.match(name):
        return delta(int(match.group(1)), truncation)
    elif match := _BOUNDARY.match(name):
        return basic_complex("boundary", int(match.group(1)), truncation=truncation)
    elif match := _HORN.match(name):
        return basic_complex("horn", int(match.group(1)), int(match.group(2)), truncation)
    raise MalformedInputError(f"Unknown space: {name}")


def gspace(name: str, G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION) -> GSpace:
    if name == "pt":
        return point_space(G, truncation)
    elif name == "translation":
        return translation(G, truncation)
    elif name == "double":
        return disjoint_copies(G, 2, truncation)
    elif name == "circle_trivial":
        return trivial_action(basic_complex("circle", truncation=truncation), G, "S^1 (trivial)")
    elif name == "swap":
        if G.order != 2:
            raise MalformedInputError(f"swap needs a group of order 2, not {G.name}")
        X = discrete(["a", "b"], truncation, "2pts")
        e = G.identity
        table = {"a": ("a", "b") if e == 0 else ("b", "a"), "b": ("b", "a") if e == 0 else ("a", "b")}
        return from_generator_action(X, G, table, "2pts (swap)")
    raise MalformedInputError(f"Unknown G-space: {name}")


def inclusion(source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
    """The map of subcomplexes of a simplex that are named by the same vertex tuples."""

    images = {g: SimplexRef(g, (), n) for n, gens in enumerate(source.generators) for g in gens}
    return SimplicialMap(source, target, images, f"{source.name}->{target.name}")


def audit_corpus(truncation: int = 3) -> tuple[list[SimplicialSet], list[SimplicialMap]]:
    """Small spaces for the product axiom and known weak equivalences between them."""

    pt = point(truncation)
    d1, d2 = delta(1, truncation), delta(2, truncation)
    horn = basic_complex("horn", 2, 1, truncation)
    spaces = [pt, discrete(["a", "b"], truncation, "2pts"), d1, basic_complex("circle", truncation=truncation)]
    equivalences = [
        to_point(d1, pt),
        to_point(d2, pt),
        inclusion(horn, d2),
        constant_map(pt, d1, SimplexRef((0,), (), 0)),
    ]
    return spaces, equivalences


def doubled_bar(G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSpace:
    """Bar(G) up to level 2, with every element of level 2 doubled.

    The copies differ only in a tag that every face forgets, so the second Segal
    map is two-to-one.
    """

    e = G.elements[G.identity]

    def multiply(a: str, b: str) -> str:
        return G.elements[G.mul(G.index(a), G.index(b))]

    def vertex(x: object) -> SimplexRef:
        return SimplexRef(x, (), 0)

    level0 = discrete([()], truncation, f"{G.name}^0")
    level1 = discrete([(g,) for g in G.elements], truncation, f"{G.name}^1")
    pairs = [(a, b, tag) for a, b in cartesian(G.elements, repeat=2) for tag in (0, 1)]
    level2 = discrete(pairs, truncation, f"2x{G.name}^2")

    faces = {
        (1, 0): SimplicialMap(level1, level0, {(g,): vertex(()) for (g,) in level1.generators[0]}, "d0"),
        (1, 1): SimplicialMap(level1, level0, {(g,): vertex(()) for (g,) in level1.generators[0]}, "d1"),
        (2, 0): SimplicialMap(level2, level1, {p: vertex((p[1],)) for p in pairs}, "d0"),
        (2, 1): SimplicialMap(level2, level1, {p: vertex((multiply(p[0], p[1]),)) for p in pairs}, "d1"),
        (2, 2): SimplicialMap(level2, level1, {p: vertex((p[0],)) for p in pairs}, "d2"),
    }
    degeneracies = {
        (0, 0): SimplicialMap(level0, level1, {(): vertex((e,))}, "s0"),
        (1, 0): SimplicialMap(level1, level2, {(g,): vertex((e, g, 0)) for (g,) in level1.generators[0]}, "s0"),
        (1, 1): SimplicialMap(level1, level2, {(g,): vertex((g, e, 0)) for (g,) in level1.generators[0]}, "s1"),
    }
    return SimplicialSpace([level0, level1, level2], faces, degeneracies, f"Bar2x({G.name})")


def cospans(G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION) -> dict[str, tuple[GMap, GMap]]:
    """The cospans X -> Y <- Z checked against the Borel homotopy pullback."""

    def to_pt(X: GSpace, pt: GSpace) -> GMap:
        return GMap(X, pt, to_point(X.sset, pt.sset))

    pt = point_space(G, truncation)
    X, Z = translation(G, truncation), disjoint_copies(G, 2, truncation)

    Y = translation(G, truncation)
    identity = SimplicialMap(Y.sset, Y.sset, {g: Y.sset.ref(g) for g in Y.sset.generators[0]}, "id")

    fixed = trivial_action(discrete(G.elements, truncation, f"{G.name} (set)"), G)
    a, b = point_space(G, truncation), point_space(G, truncation)
    vertex = SimplexRef(G.elements[G.identity], (), 0)

    return {
        "over_point": (to_pt(X, pt), to_pt(Z, pt)),
        "over_translation": (GMap(Y, Y, identity), GMap(Y, Y, identity)),
        "points_in_set": (
            GMap(a, fixed, constant_map(a.sset, fixed.sset, vertex)),
            GMap(b, fixed, constant_map(b.sset, fixed.sset, vertex)),
        ),
    }
