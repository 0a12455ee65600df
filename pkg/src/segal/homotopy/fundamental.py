"""Connected components and edge-path presentations of the fundamental group.

Words are tuples of signed letters: generator k is written k + 1 and its
inverse -(k + 1).
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Hashable

import networkx as nx
from sympy.combinatorics.fp_groups import FpGroup, simplify_presentation
from sympy.combinatorics.free_groups import free_group

from segal.core import MalformedInputError, Verdict
from segal.groups.finite import FiniteGroup, count_homomorphisms, symmetric
from segal.homotopy.chains import invariant_factors
from segal.logging import debug
from segal.simplicial.sset import SimplexRef, SimplicialMap, SimplicialSet, generator_name

Word = tuple[int, ...]

CERTIFIABLE_ORDER = 24
MAX_COSETS = 4096


@lru_cache(maxsize=None)
def counting_groups() -> tuple[FiniteGroup, ...]:
    """Targets whose homomorphism counts tell small groups apart."""
    return (symmetric(3), symmetric(4))


def one_skeleton(X: SimplicialSet) -> nx.Graph:
    """Vertices and nondegenerate edges; each edge records the first simplex joining its ends."""

    graph = nx.Graph()
    graph.add_nodes_from(X.generators[0])
    if X.truncation >= 1:
        for e in X.generators[1]:
            d0, d1 = X.faces[e]
            if not graph.has_edge(d1.generator, d0.generator):
                graph.add_edge(d1.generator, d0.generator, simplex=e)
    return graph


def components(X: SimplicialSet) -> list[list[Hashable]]:
    """Vertex sets of the path components, in order of their first vertex."""

    order = {v: k for k, v in enumerate(X.generators[0])}
    found = [sorted(c, key=order.__getitem__) for c in nx.connected_components(one_skeleton(X))]
    return sorted(found, key=lambda c: order[c[0]])


def pi0(X: SimplicialSet) -> int:
    return nx.number_connected_components(one_skeleton(X))


def component_map(f: SimplicialMap) -> dict[int, int]:
    """pi_0(f) as a map of component indices."""

    target = {v: k for k, c in enumerate(components(f.target)) for v in c}
    return {
        k: target[f(f.source.ref(c[0])).generator]
        for k, c in enumerate(components(f.source))
    }


def _reduce(word: list[int]) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _evaluate(word: Word, images: list[int], K: FiniteGroup) -> int:
    result = K.identity
    for letter in word:
        g = images[abs(letter) - 1]
        result = K.mul(result, g if letter > 0 else K.inv(g))
    return result


@dataclass(frozen=True)
class Pi1Presentation:
    generators: tuple[Hashable, ...]
    relators: tuple[Word, ...]
    basepoint: Hashable = None

    def summary(self) -> str:
        return f"<{len(self.generators)} generators | {len(self.relators)} relators>"

    def word_str(self, word: Word) -> str:
        return "".join(
            generator_name(self.generators[abs(x) - 1]) + ("" if x > 0 else "^-1") for x in word
        ) or "1"

    @cached_property
    def _sympy(self) -> tuple[FpGroup, list[str]]:
        names = [f"g{k}" for k in range(len(self.generators))]
        F, *letters = free_group(names)
        relators = []
        for word in self.relators:
            element = F.identity
            for x in word:
                element = element * (letters[abs(x) - 1] if x > 0 else letters[abs(x) - 1] ** -1)
            relators.append(element)
        return FpGroup(F, relators), names

    @cached_property
    def simplified(self) -> "Pi1Presentation":
        """Tietze-reduced copy; eliminated generators are dropped."""

        if not self.generators:
            return self
        group, names = self._sympy
        reduced = simplify_presentation(group, change_gens=True)
        kept = [names.index(str(g)) for g in reduced.generators]
        index = {names[k]: p + 1 for p, k in enumerate(kept)}
        relators = []
        for r in reduced.relators:
            word: list[int] = []
            for symbol, exponent in r.array_form:
                letter = index[str(symbol)]
                word.extend([letter if exponent > 0 else -letter] * abs(exponent))
            if word:
                relators.append(tuple(word))
        result = Pi1Presentation(
            tuple(self.generators[k] for k in kept), tuple(relators), self.basepoint
        )
        debug(f"pi_1 presentation {self.summary()} simplified to {result.summary()}")
        return result

    @cached_property
    def abelianization(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion divisors) of the abelianized group."""

        n = len(self.generators)
        matrix = []
        for word in self.relators:
            row = [0] * n
            for x in word:
                row[abs(x) - 1] += 1 if x > 0 else -1
            matrix.append(row)
        factors = invariant_factors(matrix, n)
        return n - len(factors), tuple(f for f in factors if f > 1)

    def order(self, max_cosets: int = MAX_COSETS) -> int | None:
        """Group order, or None when infinite or out of reach of coset enumeration."""

        P = self.simplified
        if not P.generators:
            return 1
        rank, _ = P.abelianization
        if rank:
            return None
        group, _ = P._sympy
        try:
            table = group.coset_enumeration([], max_cosets=max_cosets)
        except ValueError:
            debug(f"Coset enumeration of {P.summary()} exceeded {max_cosets} cosets")
            return None
        table.compress()
        return len(table.table)

    def count_homomorphisms(self, K: FiniteGroup) -> int:
        """|Hom(pi_1, K)|, backtracking over generator images."""

        P = self.simplified
        n = len(P.generators)
        due: list[list[Word]] = [[] for _ in range(n)]
        for word in P.relators:
            due[max(abs(x) for x in word) - 1].append(word)

        images: list[int] = []

        def extend() -> int:
            k = len(images)
            if k == n:
                return 1
            total = 0
            for g in range(K.order):
                images.append(g)
                if all(_evaluate(w, images, K) == K.identity for w in due[k]):
                    total += extend()
                images.pop()
            return total

        return extend()

    def invariants(self) -> "GroupInvariants":
        order = self.order()
        counts = tuple(self.count_homomorphisms(K) for K in counting_groups())
        return GroupInvariants(order, self.abelianization, counts)

    def as_dict(self) -> dict[str, Any]:
        return {
            "basepoint": generator_name(self.basepoint),
            "generators": [generator_name(g) for g in self.generators],
            "relators": [self.word_str(w) for w in self.relators],
        }


def pi1_presentation(X: SimplicialSet, basepoint: Hashable | None = None) -> Pi1Presentation:
    """Edge-path presentation of the component of `basepoint`.

    Edges of a breadth-first spanning tree are trivial; every other
    nondegenerate edge is a generator, and each nondegenerate 2-simplex s
    contributes the relator d2(s) d0(s) d1(s)^-1.
    """

    if X.is_empty():
        raise MalformedInputError(f"{X.name or 'simplicial set'} is empty and has no fundamental group")
    if basepoint is None:
        basepoint = X.generators[0][0]

    graph = one_skeleton(X)
    component = nx.node_connected_component(graph, basepoint)
    tree = {graph.edges[u, v]["simplex"] for u, v in nx.bfs_edges(graph, basepoint)}

    edges = [
        e
        for e in (X.generators[1] if X.truncation >= 1 else ())
        if X.faces[e][1].generator in component
    ]
    letters = {e: k + 1 for k, e in enumerate(e for e in edges if e not in tree)}

    def letter(face: SimplexRef) -> list[int]:
        return [] if face.degenerate else [letters.get(face.generator, 0)]

    relators = []
    if X.truncation >= 2:
        for s in X.generators[2]:
            d0, d1, d2 = X.faces[s]
            if X.vertices(d2)[0].generator not in component:
                continue
            word = letter(d2) + letter(d0) + [-x for x in letter(d1)]
            reduced = _reduce([x for x in word if x])
            if reduced:
                relators.append(reduced)

    generators = tuple(e for e in edges if e in letters)
    return Pi1Presentation(generators, tuple(relators), basepoint)


def table_presentation(G: FiniteGroup) -> Pi1Presentation:
    """<g in G | g h (gh)^-1>, the multiplication-table presentation of G."""

    e = G.identity
    letters = {g: p + 1 for p, g in enumerate(g for g in range(G.order) if g != e)}

    def letter(g: int) -> list[int]:
        return [letters[g]] if g != e else []

    relators = []
    for g in range(G.order):
        for h in range(G.order):
            word = _reduce(letter(g) + letter(h) + [-x for x in letter(G.mul(g, h))])
            if word:
                relators.append(word)
    return Pi1Presentation(tuple(G.elements[g] for g in letters), tuple(relators))


@dataclass(frozen=True)
class GroupInvariants:
    """Cheap isomorphism invariants: order, abelianization and hom counts into S3, S4."""

    order: int | None
    abelianization: tuple[int, tuple[int, ...]]
    hom_counts: tuple[int, ...]

    def as_dict(self) -> dict[str, Any]:
        rank, torsion = self.abelianization
        return {
            "order": self.order,
            "abelianization": {"rank": rank, "torsion": list(torsion)},
            "hom_counts": dict(zip((K.name for K in counting_groups()), self.hom_counts)),
        }


def finite_invariants(G: FiniteGroup) -> GroupInvariants:
    return GroupInvariants(
        G.order,
        table_presentation(G).abelianization,
        tuple(count_homomorphisms(G, K) for K in counting_groups()),
    )


def compare_groups(
    left: GroupInvariants, right: GroupInvariants, truncation: int, label: str = "pi1"
) -> Verdict:
    """CERTIFIED only for equal invariants of groups of order at most 24."""

    for field_name in ("order", "abelianization", "hom_counts"):
        a, b = getattr(left, field_name), getattr(right, field_name)
        if a != b and (field_name != "order" or (a is not None and b is not None)):
            return Verdict.refute(
                truncation, label=label, invariant=field_name, left=left.as_dict(), right=right.as_dict()
            )
    if left.order is not None and left.order == right.order and left.order <= CERTIFIABLE_ORDER:
        return Verdict.certify(truncation, label=label, order=left.order)
    return Verdict.consistent(
        truncation,
        f"groups agree on all invariants but order {left.order} is not certifiable",
        label=label,
        invariants=left.as_dict(),
    )
