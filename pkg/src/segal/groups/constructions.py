"""G-spaces and the W, W-bar and Borel constructions.

Actions are right actions. For WG an n-simplex is the tuple (g_n, ..., g_0) with
g_j in G_j, and h in G_n acts by (g_n, ...) . h = (h^-1 g_n, ...).
"""

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Callable, Hashable

from segal.core import DEFAULT_BUDGET, DEFAULT_TRUNCATION, InvalidObjectError, MalformedInputError
from segal.groups.finite import FiniteGroup, SimplicialGroup, constant_group
from segal.logging import debug
from segal.simplicial.constructions import product, pullback
from segal.simplicial.sset import (
    Presented,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    build,
    discrete,
    point,
    present,
)

Tower = tuple[int, ...]


@dataclass
class GSpace:
    """A simplicial set with a right action of a simplicial group, level by level."""

    presented: Presented[Any]
    group: SimplicialGroup
    action: Callable[[int, Any, int], Any]
    name: str = ""

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    @property
    def truncation(self) -> int:
        return min(self.sset.truncation, self.group.truncation)

    def summary(self) -> str:
        return f"GSpace({self.name or '?'}, {self.sset.counts()}, G={self.group.name})"

    def act(self, n: int, element: Any, h: int) -> Any:
        return self.action(n, element, h)

    def act_ref(self, ref: SimplexRef, h: int) -> SimplexRef:
        n = ref.dim
        return self.presented.ref(self.action(n, self.presented.element(ref), h), n)

    @property
    def finite_group(self) -> FiniteGroup:
        if not self.group.is_constant:
            raise MalformedInputError(f"{self.group.name} is not a discrete group")
        return self.group.levels[0]

    def is_free(self) -> bool:
        for n in range(self.truncation + 1):
            G = self.group.level(n)
            for x in self.presented.elements[n]:
                if any(self.act(n, x, h) == x for h in range(G.order) if h != G.identity):
                    return False
        return True

    def violations(self) -> list[str]:
        problems = []
        P = self.presented
        for n in range(self.truncation + 1):
            G = self.group.level(n)
            for x in P.elements[n]:
                if self.act(n, x, G.identity) != x:
                    problems.append(f"identity does not fix {P.ref(x, n)}")
                for a in range(G.order):
                    xa = self.act(n, x, a)
                    if xa not in P.to_ref[n]:
                        problems.append(f"{P.ref(x, n)}.{G.elements[a]} is not a simplex")
                        continue
                    for b in range(G.order):
                        if self.act(n, xa, b) != self.act(n, x, G.mul(a, b)):
                            problems.append(
                                f"({P.ref(x, n)}.{G.elements[a]}).{G.elements[b]}"
                                f" != {P.ref(x, n)}.({G.elements[a]}{G.elements[b]})"
                            )
                    for i in range(n + 1 if n else 0):
                        left = P.face(n, i, xa)
                        right = self.act(n - 1, P.face(n, i, x), self.group.face(n, i, a))
                        if left != right:
                            problems.append(f"action does not commute with d{i} on {P.ref(x, n)}")
                    if n < self.truncation:
                        for i in range(n + 1):
                            left = P.degeneracy(n, i, xa)
                            right = self.act(n + 1, P.degeneracy(n, i, x), self.group.degeneracy(n, i, a))
                            if left != right:
                                problems.append(f"action does not commute with s{i} on {P.ref(x, n)}")
                if len(problems) > 50:
                    return problems
        return problems

    def validate(self) -> "GSpace":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("G-space", problems)
        return self


def from_generator_action(
    X: SimplicialSet,
    G: FiniteGroup,
    table: dict[Hashable, tuple[Hashable, ...]],
    name: str = "",
) -> GSpace:
    """A discrete group acting by permuting the generators of X.

    table[x][h] is the generator x.h; degeneracies are carried along.
    """

    def act(n: int, ref: SimplexRef, h: int) -> SimplexRef:
        return SimplexRef(table[ref.generator][h], ref.word, ref.dim)

    return GSpace(present(X), constant_group(G, X.truncation), act, name or X.name)


def trivial_action(X: SimplicialSet, G: FiniteGroup, name: str = "") -> GSpace:
    return GSpace(
        present(X), constant_group(G, X.truncation), lambda n, x, h: x, name or f"{X.name} (trivial)"
    )


def translation(G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION, name: str = "") -> GSpace:
    """G acting on itself by right multiplication, as a discrete space."""

    X = discrete(G.elements, truncation, G.name)
    table = {g: tuple(G.elements[G.mul(k, h)] for h in range(G.order)) for k, g in enumerate(G.elements)}
    return from_generator_action(X, G, table, name or f"{G.name} (translation)")


def disjoint_copies(G: FiniteGroup, copies: int = 2, truncation: int = DEFAULT_TRUNCATION) -> GSpace:
    """copies x G, each copy acted on by translation."""

    names = [[f"{g}.{c}" for g in G.elements] for c in range(copies)]
    X = discrete([x for level in names for x in level], truncation, f"{copies}x{G.name}")
    table = {
        names[c][k]: tuple(names[c][G.mul(k, h)] for h in range(G.order))
        for c in range(copies)
        for k in range(G.order)
    }
    return from_generator_action(X, G, table, f"{G.name} u {G.name}")


def point_space(G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION) -> GSpace:
    return trivial_action(point(truncation), G, "pt")


def underlying(G: SimplicialGroup) -> Presented[tuple[int, int]]:
    """The simplicial set of G; an n-simplex is (n, g)."""

    return build(
        G.truncation,
        lambda n: ((n, g) for g in range(G.level(n).order)),
        lambda n, i, x: (n - 1, G.face(n, i, x[1])),
        lambda n, i, x: (n + 1, G.degeneracy(n, i, x[1])),
        f"U({G.name})",
    )


def _w_face(G: SimplicialGroup, n: int, i: int, t: Tower) -> Tower:
    if i == n:
        return tuple(G.face(n - j, n - j, t[j]) for j in range(n))
    head = tuple(G.face(n - j, i - j, t[j]) for j in range(i))
    middle = G.level(n - i - 1).mul(G.face(n - i, 0, t[i]), t[i + 1])
    return head + (middle,) + t[i + 2:]


def _w_degeneracy(G: SimplicialGroup, n: int, i: int, t: Tower) -> Tower:
    head = tuple(G.degeneracy(n - j, i - j, t[j]) for j in range(i + 1))
    return head + (G.level(n - i).identity,) + t[i + 1:]


@dataclass
class WConstruction:
    """WG with its free right G-action and the quotient map onto W-bar G."""

    group: SimplicialGroup
    total: Presented[Tower]
    base: Presented[Tower]
    projection: SimplicialMap

    @property
    def gspace(self) -> GSpace:
        G = self.group

        def act(n: int, t: Tower, h: int) -> Tower:
            return (G.level(n).mul(G.level(n).inv(h), t[0]),) + t[1:]

        return GSpace(self.total, G, act, f"W{G.name}")


def w(G: SimplicialGroup, budget: int = DEFAULT_BUDGET) -> GSpace:
    return w_construction(G, budget).gspace


def wbar(G: SimplicialGroup, budget: int = DEFAULT_BUDGET) -> Presented[Tower]:
    return _wbar(G, budget)


def _wbar(G: SimplicialGroup, budget: int) -> Presented[Tower]:
    def lift(n: int, t: Tower) -> Tower:
        return (G.level(n).identity,) + t

    return build(
        G.truncation,
        lambda n: cartesian(*(range(G.level(j).order) for j in range(n - 1, -1, -1))),
        lambda n, i, t: _w_face(G, n, i, lift(n, t))[1:],
        lambda n, i, t: _w_degeneracy(G, n, i, lift(n, t))[1:],
        f"Wbar({G.name})",
        budget,
    )


def w_construction(G: SimplicialGroup, budget: int = DEFAULT_BUDGET) -> WConstruction:
    total = build(
        G.truncation,
        lambda n: cartesian(*(range(G.level(j).order) for j in range(n, -1, -1))),
        lambda n, i, t: _w_face(G, n, i, t),
        lambda n, i, t: _w_degeneracy(G, n, i, t),
        f"W({G.name})",
        budget,
    )
    base = _wbar(G, budget)
    projection = total.map_to(base, lambda n, t: t[1:], "q")
    debug(f"W({G.name}): {total.sset.counts()}, Wbar: {base.sset.counts()}")
    return WConstruction(G, total, base, projection)


def w_to_wbar(G: SimplicialGroup, budget: int = DEFAULT_BUDGET) -> SimplicialMap:
    return w_construction(G, budget).projection


@dataclass
class BorelConstruction:
    """X//G, presented by pairs (x, t) with t an n-simplex of W-bar G."""

    space: GSpace
    presented: Presented[tuple[Any, Tower]]
    classifying: Presented[Tower]

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    def projection(self) -> SimplicialMap:
        """X//G -> W-bar G."""
        return self.presented.map_to(self.classifying, lambda n, p: p[1], "borel_projection")


def borel_construction(X: GSpace, budget: int = DEFAULT_BUDGET) -> BorelConstruction:
    """(X x WG)/G; each orbit has a unique representative with last W-coordinate e."""

    G = X.group
    P = X.presented
    t_max = X.truncation

    def normalize(n: int, x: Any, t: Tower) -> tuple[Any, Tower]:
        return (X.act(n, x, t[0]), t[1:])

    def face(n: int, i: int, p: tuple[Any, Tower]) -> tuple[Any, Tower]:
        x, tbar = p
        t = _w_face(G, n, i, (G.level(n).identity,) + tbar)
        return normalize(n - 1, P.face(n, i, x), t)

    def degeneracy(n: int, i: int, p: tuple[Any, Tower]) -> tuple[Any, Tower]:
        x, tbar = p
        t = _w_degeneracy(G, n, i, (G.level(n).identity,) + tbar)
        return normalize(n + 1, P.degeneracy(n, i, x), t)

    presented = build(
        t_max,
        lambda n: (
            (x, t)
            for x in P.elements[n]
            for t in cartesian(*(range(G.level(j).order) for j in range(n - 1, -1, -1)))
        ),
        face,
        degeneracy,
        f"{X.name}//{G.name}",
        budget,
    )
    return BorelConstruction(X, presented, _wbar(G, budget))


def borel(X: GSpace, budget: int = DEFAULT_BUDGET) -> SimplicialSet:
    return borel_construction(X, budget).sset


def borel_projection(X: GSpace, budget: int = DEFAULT_BUDGET) -> SimplicialMap:
    return borel_construction(X, budget).projection()


def orbit_space(X: GSpace, budget: int = DEFAULT_BUDGET) -> tuple[Presented[Any], SimplicialMap]:
    """X/G and the quotient map; orbits are named by their first element."""

    P = X.presented
    first: list[dict[Any, Any]] = []
    for n in range(X.truncation + 1):
        order = {x: k for k, x in enumerate(P.elements[n])}
        G = X.group.level(n)
        first.append({x: min((X.act(n, x, h) for h in range(G.order)), key=order.__getitem__) for x in P.elements[n]})

    quotient = build(
        X.truncation,
        lambda n: (x for x in P.elements[n] if first[n][x] == x),
        lambda n, i, x: first[n - 1][P.face(n, i, x)],
        lambda n, i, x: first[n + 1][P.degeneracy(n, i, x)],
        f"{X.name}/{X.group.name}",
        budget,
    )
    return quotient, P.map_to(quotient, lambda n, x: first[n][x], "orbit")


@dataclass
class GMap:
    """An equivariant map of G-spaces."""

    source: GSpace
    target: GSpace
    map: SimplicialMap

    def violations(self) -> list[str]:
        problems = list(self.map.violations())
        G = self.source.group
        for n in range(self.source.truncation + 1):
            for x in self.source.presented.elements[n]:
                ref = self.source.presented.ref(x, n)
                for h in range(G.level(n).order):
                    if self.map(self.source.act_ref(ref, h)) != self.target.act_ref(self.map(ref), h):
                        problems.append(f"map is not equivariant at {ref}")
                        break
        return problems

    def validate(self) -> "GMap":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("equivariant map", problems)
        return self


def borel_map(f: GMap, source: BorelConstruction, target: BorelConstruction) -> SimplicialMap:
    """f//G: (x, t) -> (f x, t)."""

    def image(n: int, p: tuple[Any, Tower]) -> tuple[Any, Tower]:
        x, t = p
        ref = f.map(f.source.presented.ref(x, n))
        return (f.target.presented.element(ref), t)

    return source.presented.map_to(target.presented, image, f"{f.map.name}//G")


def gspace_pullback(f: GMap, g: GMap, budget: int = DEFAULT_BUDGET) -> GSpace:
    """X x_Y Z with the diagonal action."""

    cone = pullback(f.map, g.map, budget)
    X, Z = f.source, g.source

    def act(n: int, pair: tuple[SimplexRef, SimplexRef], h: int) -> tuple[SimplexRef, SimplexRef]:
        return (X.act_ref(pair[0], h), Z.act_ref(pair[1], h))

    return GSpace(cone.presented, X.group, act, f"{X.name}x_{f.target.name}{Z.name}")


def gspace_product(X: GSpace, Y: GSpace, budget: int = DEFAULT_BUDGET) -> GSpace:
    pair = product(X.sset, Y.sset, budget)

    def act(n: int, p: tuple[SimplexRef, SimplexRef], h: int) -> tuple[SimplexRef, SimplexRef]:
        return (X.act_ref(p[0], h), Y.act_ref(p[1], h))

    return GSpace(pair.presented, X.group, act, f"{X.name}x{Y.name}")


def homotopy_fiber(f: SimplicialMap, G: SimplicialGroup, budget: int = DEFAULT_BUDGET) -> GSpace:
    """A x_{W-bar G} WG for f: A -> W-bar G, acted on through WG."""

    W = w_construction(G, budget)
    EG = W.gspace
    cone = pullback(f, W.projection, budget)

    def act(n: int, pair: tuple[SimplexRef, SimplexRef], h: int) -> tuple[SimplexRef, SimplexRef]:
        return (pair[0], EG.act_ref(pair[1], h))

    return GSpace(cone.presented, G, act, f"hofib({f.name})")
