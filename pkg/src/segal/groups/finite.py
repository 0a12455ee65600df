from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Any

from segal.core import DEFAULT_TRUNCATION, InvalidObjectError


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table on element indices."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def summary(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @cached_property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(self.order)):
                return e
        raise InvalidObjectError("finite group", ["no identity element"])

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(h for h in range(self.order) if self.table[g][h] == e) for g in range(self.order))

    @cached_property
    def positions(self) -> dict[str, int]:
        return {name: k for k, name in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, *factors: int) -> int:
        result = self.identity
        for g in factors:
            result = self.table[result][g]
        return result

    def index(self, name: str) -> int:
        return self.positions[name]

    @property
    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def violations(self) -> list[str]:
        n = self.order
        problems = []
        if n == 0:
            return ["the group has no elements"]
        if len(set(self.elements)) != n:
            problems.append("element names are not unique")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            return problems + [f"table must be {n}x{n}"]
        if any(not 0 <= v < n for row in self.table for v in row):
            return problems + ["table entries must be element indices"]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        problems.append(
                            f"({self.elements[a]}*{self.elements[b]})*{self.elements[c]}"
                            f" != {self.elements[a]}*({self.elements[b]}*{self.elements[c]})"
                        )
                        if len(problems) > 20:
                            return problems
        identities = [
            e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))
        ]
        if not identities:
            return problems + ["no identity element"]
        e = identities[0]
        for g in range(n):
            if not any(self.table[g][h] == e == self.table[h][g] for h in range(n)):
                problems.append(f"{self.elements[g]} has no inverse")
        return problems

    def validate(self) -> "FiniteGroup":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("finite group", problems)
        return self

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily in element order."""

        generators: list[int] = []
        span = {self.identity}
        for g in sorted(range(self.order), key=lambda g: -self.element_order(g)):
            if g in span:
                continue
            generators.append(g)
            span = self.closure(generators)
            if len(span) == self.order:
                break
        return generators

    def closure(self, generators: list[int]) -> set[int]:
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            h = frontier.pop()
            for s in generators:
                k = self.table[h][s]
                if k not in span:
                    span.add(k)
                    frontier.append(k)
        return span

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.table[h][g]
            k += 1
        return k

    def as_dict(self) -> dict[str, Any]:
        return {
            "kind": "finite_group",
            "name": self.name,
            "elements": list(self.elements),
            "table": [list(row) for row in self.table],
        }


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(
        tuple(str(k) for k in range(n)),
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
        f"Z/{n}",
    )


def trivial() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),), "1")


def max_monoid() -> FiniteGroup:
    """({0, 1}, max): a monoid without inverses. Do not validate it as a group."""
    return FiniteGroup(("0", "1"), ((0, 1), (1, 1)), "max")


def symmetric(n: int) -> FiniteGroup:
    """S_n acting on the right: (p*q)(x) = q(p(x))."""

    perms = sorted(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(q[p[x]] for x in range(n))] for q in perms) for p in perms
    )
    names = tuple("".join(str(v + 1) for v in p) for p in perms)
    return FiniteGroup(names, table, f"S{n}")


def count_homomorphisms(H: FiniteGroup, K: FiniteGroup) -> int:
    """|Hom(H, K)|, by choosing images of a generating set of H."""

    generators = H.generating_set()
    count = 0

    def extend(images: list[int]) -> bool:
        phi = {H.identity: K.identity}
        frontier = [H.identity]
        while frontier:
            h = frontier.pop()
            for s, t in zip(generators, images):
                hs, value = H.mul(h, s), K.mul(phi[h], t)
                if hs in phi:
                    if phi[hs] != value:
                        return False
                else:
                    phi[hs] = value
                    frontier.append(hs)
        return True

    def assign(images: list[int]) -> None:
        nonlocal count
        if len(images) == len(generators):
            count += extend(images)
            return
        s = generators[len(images)]
        for t in range(K.order):
            if K.element_order(t) and H.element_order(s) % K.element_order(t) == 0:
                assign(images + [t])

    assign([])
    return count


@dataclass
class SimplicialGroup:
    """A simplicial group with finite levels and homomorphisms as structure maps.

    faces[(n, i)] and degeneracies[(n, i)] are index maps out of level n.
    """

    levels: list[FiniteGroup]
    faces: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    degeneracies: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    name: str = ""

    @property
    def truncation(self) -> int:
        return len(self.levels) - 1

    def summary(self) -> str:
        return f"SimplicialGroup({self.name or '?'}, orders={[g.order for g in self.levels]})"

    def level(self, n: int) -> FiniteGroup:
        return self.levels[n]

    def face(self, n: int, i: int, g: int) -> int:
        return self.faces[(n, i)][g]

    def degeneracy(self, n: int, i: int, g: int) -> int:
        return self.degeneracies[(n, i)][g]

    @property
    def is_constant(self) -> bool:
        first = self.levels[0]
        return all(G == first for G in self.levels) and all(
            m == tuple(range(first.order)) for m in [*self.faces.values(), *self.degeneracies.values()]
        )

    def violations(self) -> list[str]:
        problems = []
        for n, G in enumerate(self.levels):
            problems.extend(f"level {n}: {p}" for p in G.violations())
        if problems:
            return problems

        def is_hom(source: FiniteGroup, target: FiniteGroup, m: tuple[int, ...]) -> bool:
            return all(
                m[source.mul(a, b)] == target.mul(m[a], m[b])
                for a in range(source.order)
                for b in range(source.order)
            )

        for n in range(1, self.truncation + 1):
            for i in range(n + 1):
                if not is_hom(self.levels[n], self.levels[n - 1], self.faces[(n, i)]):
                    problems.append(f"d{i} on level {n} is not a homomorphism")
        for n in range(self.truncation):
            for i in range(n + 1):
                if not is_hom(self.levels[n], self.levels[n + 1], self.degeneracies[(n, i)]):
                    problems.append(f"s{i} on level {n} is not a homomorphism")
        for n in range(2, self.truncation + 1):
            for j in range(n + 1):
                for i in range(j):
                    for g in range(self.levels[n].order):
                        if self.face(n - 1, i, self.face(n, j, g)) != self.face(n - 1, j - 1, self.face(n, i, g)):
                            problems.append(f"d{i}d{j} != d{j - 1}d{i} on level {n}")
                            break
        return problems

    def validate(self) -> "SimplicialGroup":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("simplicial group", problems)
        return self


def constant_group(G: FiniteGroup, truncation: int = DEFAULT_TRUNCATION) -> SimplicialGroup:
    ident = tuple(range(G.order))
    return SimplicialGroup(
        [G] * (truncation + 1),
        {(n, i): ident for n in range(1, truncation + 1) for i in range(n + 1)},
        {(n, i): ident for n in range(truncation) for i in range(n + 1)},
        G.name,
    )
